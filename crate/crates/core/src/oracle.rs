//! Slow reference implementations for cross-checking `criteria` and
//! `witness`. Everything here works on plain integer vectors and evaluates
//! quantifiers by direct nested loops; nothing is shared with the optimized
//! predicates on purpose.

use serde::{Deserialize, Serialize};

use crate::criteria::{Certificate, ConditionContext, Variant};
use crate::error::{CriteriaError, WitnessError};
use crate::residue::ResidueSubset;
use crate::sets::CanonicalSet;

/// Largest modulus the naive search accepts.
pub const NAIVE_CAP: usize = 16;

/// Explicit finite set clipped to `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSet {
    pub lo: i64,
    pub hi: i64,
    members: Vec<i64>,
}

impl WindowSet {
    /// Sorts, dedups and drops anything outside the window.
    pub fn new(lo: i64, hi: i64, members: impl IntoIterator<Item = i64>) -> Self {
        let mut members: Vec<i64> = members
            .into_iter()
            .filter(|&v| lo <= v && v <= hi)
            .collect();
        members.sort_unstable();
        members.dedup();
        Self { lo, hi, members }
    }

    pub fn members(&self) -> &[i64] {
        &self.members
    }

    pub fn contains(&self, v: i64) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// `{a + b} ∩ [lo, hi]` by brute force.
pub fn window_sumset(a: &WindowSet, b: &WindowSet, lo: i64, hi: i64) -> WindowSet {
    let mut out = Vec::new();
    for &x in &a.members {
        for &y in &b.members {
            out.push(x + y);
        }
    }
    WindowSet::new(lo, hi, out)
}

/// Lex-first `C ⊆ {0..T-1}` containing 0 that satisfies the covering
/// condition and the chosen irredundancy condition, found by enumerating
/// every subset.
pub fn naive_find_certificate(
    ctx: &ConditionContext,
    variant: Variant,
) -> Result<Option<Certificate>, CriteriaError> {
    let t = ctx.t();
    if t > NAIVE_CAP {
        return Err(CriteriaError::CapExceeded { t, cap: NAIVE_CAP });
    }
    let x: Vec<usize> = ctx.x_t().iter().collect();
    let y: Vec<usize> = ctx.y1_res().iter().collect();
    let mut found = None;
    let mut current = Vec::new();
    enumerate(t, 0, &mut current, &mut |c: &[usize]| {
        if c.first() == Some(&0) && covers(t, c, &x, &y) && irredundant(t, c, &x, &y, variant) {
            found = Some(c.to_vec());
            return true;
        }
        false
    });
    Ok(found.map(|c| Certificate {
        t,
        c: ResidueSubset::from_residues(t, c).expect("residues below t"),
        variant,
    }))
}

/// Preorder walk over sorted lists: visits `[]`, `[0]`, `[0,1]`, `[0,1,2]`, ...
/// which is lexicographic order. Stops once `visit` returns true.
fn enumerate(
    t: usize,
    from: usize,
    cur: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if visit(cur) {
        return true;
    }
    for next in from..t {
        cur.push(next);
        let stop = enumerate(t, next + 1, cur, visit);
        cur.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Every residue `n` equals `c + u` for some `c ∈ C`, `u ∈ X ∪ Y1`.
fn covers(t: usize, c: &[usize], x: &[usize], y: &[usize]) -> bool {
    (0..t).all(|n| {
        c.iter()
            .any(|&ci| x.iter().chain(y).any(|&u| (ci + u) % t == n))
    })
}

/// For every `c ∈ C` some `y ∈ Y1` puts `c + y` outside the relevant sumset:
/// `C + X` for the necessary form, `(C \ {c}) + (X ∪ Y1)` for the
/// sufficient one.
fn irredundant(t: usize, c: &[usize], x: &[usize], y: &[usize], variant: Variant) -> bool {
    c.iter().all(|&ci| {
        y.iter().any(|&yj| {
            let target = (ci + yj) % t;
            match variant {
                Variant::Necessary => !c
                    .iter()
                    .any(|&other| x.iter().any(|&u| (other + u) % t == target)),
                Variant::Sufficient => !c
                    .iter()
                    .filter(|&&other| other != ci)
                    .any(|&other| x.iter().chain(y).any(|&u| (other + u) % t == target)),
            }
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub passed: bool,
    pub checked: usize,
    pub first_failure: Option<i64>,
}

/// Checks `D + W ⊇ [inner_lo, inner_hi]` using only the finite window `D`.
///
/// `D` must reach `y0_margin + m` beyond the inner window on both sides, so
/// that no representation could need an element of `D` outside its window.
pub fn verify_complement_window(
    d: &WindowSet,
    set: &CanonicalSet,
    inner_lo: i64,
    inner_hi: i64,
) -> Result<ComplementReport, WitnessError> {
    let margin = set.margins().map_or(0, |m| m.y0_margin) + set.m() as i64;
    if d.lo > inner_lo - margin || d.hi < inner_hi + margin {
        return Err(WitnessError::MarginTooSmall { required: margin });
    }
    let mut checked = 0;
    for n in inner_lo..=inner_hi {
        checked += 1;
        if !d.members.iter().any(|&e| set.contains(n - e)) {
            return Ok(ComplementReport {
                passed: false,
                checked,
                first_failure: Some(n),
            });
        }
    }
    Ok(ComplementReport {
        passed: true,
        checked,
        first_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(t: usize, x: &[usize], y: &[usize]) -> ConditionContext {
        ConditionContext::new(t, x, y).unwrap()
    }

    #[test]
    fn naive_examples() {
        let c = naive_find_certificate(&ctx(2, &[0], &[1]), Variant::Sufficient)
            .unwrap()
            .unwrap();
        assert_eq!(c.c.to_vec(), vec![0]);
        assert!(
            naive_find_certificate(&ctx(3, &[0], &[1]), Variant::Necessary)
                .unwrap()
                .is_none()
        );
        assert_eq!(
            naive_find_certificate(&ctx(17, &[0], &[1]), Variant::Necessary),
            Err(CriteriaError::CapExceeded { t: 17, cap: 16 })
        );
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let mut seen = Vec::new();
        enumerate(3, 0, &mut Vec::new(), &mut |c: &[usize]| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(seen.len(), 8);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sumset_examples() {
        let a = WindowSet::new(1, 12, 1..=12);
        let b = WindowSet::new(-3, -3, [-3]);
        assert_eq!(
            window_sumset(&a, &b, -5, 10).members(),
            (-2..=9).collect::<Vec<_>>()
        );
        let empty = WindowSet::new(0, 0, []);
        assert!(window_sumset(&a, &empty, -100, 100).members().is_empty());
        let zero = WindowSet::new(0, 0, [0]);
        assert_eq!(window_sumset(&zero, &a, 3, 5).members(), &[3, 4, 5]);
    }

    #[test]
    fn complement_window_examples() {
        let set = CanonicalSet::validate(2, &[0], &[], &[1], 0).unwrap();
        let evens = WindowSet::new(-40, 40, (-40..=40).filter(|v| v % 2 == 0));
        assert!(
            verify_complement_window(&evens, &set, -30, 30)
                .unwrap()
                .passed
        );

        let holed = WindowSet::new(-40, 40, evens.members().iter().copied().filter(|&v| v != 0));
        let r = verify_complement_window(&holed, &set, -30, 30).unwrap();
        assert_eq!(r.first_failure, Some(1));

        let none = WindowSet::new(-40, 40, []);
        let r = verify_complement_window(&none, &set, -30, 30).unwrap();
        assert_eq!(r.first_failure, Some(-30));

        assert!(matches!(
            verify_complement_window(&evens, &set, -39, 30),
            Err(WitnessError::MarginTooSmall { .. })
        ));
    }
}
