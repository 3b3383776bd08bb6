//! Instance generators shared by the integration suites.
#![allow(dead_code)]

use mincomp::{CanonicalSet, ConditionContext};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every subset of `0..m`, as bit masks.
pub fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << m).map(move |mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
}

pub fn complement(m: usize, x: &[usize]) -> Vec<usize> {
    (0..m).filter(|r| !x.contains(r)).collect()
}

/// A random subset of `pool`, each element kept with probability `p`.
pub fn sample<R: Rng>(rng: &mut R, pool: &[usize], p: f64) -> Vec<usize> {
    pool.iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

/// Random context at modulus `t` with disjoint `X`, `Y1`.
pub fn random_context<R: Rng>(rng: &mut R, t: usize) -> ConditionContext {
    let all: Vec<usize> = (0..t).collect();
    let x = sample(rng, &all, 0.4);
    let y = sample(rng, &complement(t, &x), 0.4);
    ConditionContext::new(t, &x, &y).unwrap()
}

/// Random canonical set with `m ≤ max_m`, nonempty `X`, and `Y0`/`Y1`
/// elements drawn from `[-span, span]`. `Y1` may come out empty.
pub fn random_set<R: Rng>(rng: &mut R, max_m: usize, span: i64) -> CanonicalSet {
    let m = rng.gen_range(1..=max_m);
    let mut residues: Vec<usize> = (0..m).collect();
    residues.shuffle(rng);
    let nx = rng.gen_range(1..=m);
    let x: Vec<i64> = residues[..nx].iter().map(|&r| r as i64).collect();
    let in_x = |v: i64| x.contains(&v.rem_euclid(m as i64));
    let mut y0 = Vec::new();
    let mut y1 = Vec::new();
    for v in -span..=span {
        if in_x(v) {
            if v < 0 && rng.gen_bool(0.15) {
                y0.push(v);
            }
        } else if rng.gen_bool(0.2) {
            y1.push(v);
        }
    }
    CanonicalSet::validate(m, &x, &y0, &y1, 0).unwrap()
}
