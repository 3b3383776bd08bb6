//! Inductive construction of a set `W ⊆ N` with gaps in `{1, 2}` that is not
//! eventually periodic and still has a minimal complement `C = {c_i}`.
//!
//! Starting from `d_1 = -1`, `c_1 = -3`, `W_1 = {1..12}`, step `i ≥ 2`:
//!
//! 1. `d_i` is the largest negative integer outside `W_{i-1} + {c_1..c_{i-1}}`;
//! 2. `c_i = min(d_i + 2c_{i-1} - slack, d_{i-1} - max W_{i-1} - 1)`;
//! 3. `W_i = W_{i-1} ∪ ([-2c_{i-1}, -2c_i - 1] \ {-c_i + d_j : j < i})`.
//!
//! The second term of step 2 keeps every excluded point above `max W_{i-1}`.
//! It only binds at `i = 2`, where it forces `c_2 ≤ -14`.
//!
//! Prefixes are stored as maximal runs; every sumset is computed on runs, so
//! the exponentially growing `c_i` cost nothing extra.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Thm4Error;

/// Closed integer interval `[start, end]`.
pub type Run = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "StateRepr", try_from = "StateRepr")]
pub struct Thm4State {
    d_seq: Vec<i64>,
    c_seq: Vec<i64>,
    /// Slack used at steps `2..=k`.
    slack_seq: Vec<i64>,
    runs: Vec<Run>,
}

impl Thm4State {
    /// Number of completed iterations `k`.
    pub fn k(&self) -> usize {
        self.d_seq.len()
    }

    pub fn d_seq(&self) -> &[i64] {
        &self.d_seq
    }

    pub fn c_seq(&self) -> &[i64] {
        &self.c_seq
    }

    pub fn slack_seq(&self) -> &[i64] {
        &self.slack_seq
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn contains(&self, n: i64) -> bool {
        in_runs(&self.runs, n)
    }

    pub fn max_w(&self) -> i64 {
        self.runs.last().map_or(i64::MIN, |r| r.1)
    }

    /// Elements of the prefix in `[lo, hi]`.
    pub fn elements(&self, lo: i64, hi: i64) -> Vec<i64> {
        self.runs
            .iter()
            .flat_map(|&(a, b)| a.max(lo)..=b.min(hi))
            .collect()
    }

    /// Points excluded at step `i` (1-based, `i ≥ 2`): `-c_i + d_j`, `j < i`.
    pub fn excluded_at(&self, i: usize) -> Vec<i64> {
        if i < 2 || i > self.k() {
            return Vec::new();
        }
        self.d_seq[..i - 1]
            .iter()
            .map(|d| d - self.c_seq[i - 1])
            .collect()
    }
}

/// The base case `d_1 = -1`, `c_1 = -3`, `W_1 = {1..12}`.
pub fn thm4_init() -> Thm4State {
    Thm4State {
        d_seq: vec![-1],
        c_seq: vec![-3],
        slack_seq: vec![],
        runs: vec![(1, 12)],
    }
}

/// Largest negative integer outside `W_{k} + {c_1..c_k}` for the current state.
pub fn next_d(state: &Thm4State) -> i64 {
    let mut shifted: Vec<Run> = state
        .c_seq
        .iter()
        .flat_map(|&c| state.runs.iter().map(move |&(a, b)| (a + c, b + c)))
        .collect();
    let merged = merge_runs(&mut shifted);
    match merged.iter().find(|&&(a, b)| a <= -1 && -1 <= b) {
        Some(&(a, _)) => a - 1,
        None => -1,
    }
}

/// `c_i` for the next step given `d_i` and the slack.
pub fn choose_c(state: &Thm4State, d_i: i64, slack: i64) -> Result<i64, Thm4Error> {
    if slack < 1 {
        return Err(Thm4Error::InvalidSlack(slack));
    }
    let step = state.k() + 1;
    let prev_c = *state.c_seq.last().unwrap();
    let prev_d = *state.d_seq.last().unwrap();
    let strict = prev_c
        .checked_mul(2)
        .and_then(|v| v.checked_add(d_i))
        .and_then(|v| v.checked_sub(slack))
        .ok_or(Thm4Error::Overflow(step))?;
    let guard = prev_d
        .checked_sub(state.max_w())
        .and_then(|v| v.checked_sub(1))
        .ok_or(Thm4Error::Overflow(step))?;
    Ok(strict.min(guard))
}

/// One iteration of the construction.
pub fn thm4_step(state: &Thm4State, slack: i64) -> Result<Thm4State, Thm4Error> {
    let step = state.k() + 1;
    let d = next_d(state);
    let c = choose_c(state, d, slack)?;
    let prev_c = *state.c_seq.last().unwrap();
    let lo = prev_c.checked_mul(-2).ok_or(Thm4Error::Overflow(step))?;
    let hi = c
        .checked_mul(-2)
        .and_then(|v| v.checked_sub(1))
        .ok_or(Thm4Error::Overflow(step))?;
    let max_prev = state.max_w();
    let mut excluded: Vec<i64> = state.d_seq.iter().map(|dj| dj - c).collect();
    excluded.sort_unstable();
    for &p in &excluded {
        if p <= max_prev || state.contains(p) {
            return Err(Thm4Error::ExclusionCollision {
                step,
                point: p,
                prefix_max: max_prev,
            });
        }
        if !(lo < p && p <= -c - 1 && -c - 1 < hi) {
            return Err(Thm4Error::InvalidState(format!(
                "step {step}: excluded point {p} outside ({lo}, {}]",
                -c - 1
            )));
        }
    }
    let mut runs = state.runs.clone();
    let mut start = lo;
    for &p in &excluded {
        if start < p {
            runs.push((start, p - 1));
        }
        start = p + 1;
    }
    runs.push((start, hi));
    let runs = merge_runs(&mut runs);

    let mut next = state.clone();
    next.d_seq.push(d);
    next.c_seq.push(c);
    next.slack_seq.push(slack);
    next.runs = runs;
    Ok(next)
}

/// Runs `k - 1` steps from the base case; `slack_fn(i)` supplies the slack
/// of step `i`.
pub fn thm4_generate<F: Fn(usize) -> i64>(k: usize, slack_fn: F) -> Result<Thm4State, Thm4Error> {
    thm4_resume(thm4_init(), k, slack_fn)
}

/// Continues an existing state up to `k` iterations.
pub fn thm4_resume<F: Fn(usize) -> i64>(
    mut state: Thm4State,
    k: usize,
    slack_fn: F,
) -> Result<Thm4State, Thm4Error> {
    if k == 0 {
        return Err(Thm4Error::InvalidState("k must be at least 1".into()));
    }
    while state.k() < k {
        let i = state.k() + 1;
        state = thm4_step(&state, slack_fn(i))?;
    }
    Ok(state)
}

/// Slack schedules accepted by the CLI: `const:N`, `cycle:a,b,..`
/// (step `i` uses entry `i mod len`), `seq:a,b,..` (last entry repeats),
/// `random:SEED[:MAX]` (uniform in `[1, MAX]`, default 5).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlackSpec {
    Const(i64),
    Cycle(Vec<i64>),
    Seq(Vec<i64>),
    Random { seed: u64, max: i64 },
}

impl SlackSpec {
    pub fn value(&self, step: usize) -> i64 {
        match self {
            SlackSpec::Const(v) => *v,
            SlackSpec::Cycle(v) => v[step % v.len()],
            SlackSpec::Seq(v) => v[(step.saturating_sub(2)).min(v.len() - 1)],
            SlackSpec::Random { seed, max } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(step as u64));
                rng.gen_range(1..=*max)
            }
        }
    }
}

impl FromStr for SlackSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| format!("bad slack spec `{s}`"))?;
        let list = |r: &str| -> Result<Vec<i64>, String> {
            let v = r
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            if v.is_empty() || v.iter().any(|&x| x < 1) {
                return Err(format!("slack values must be >= 1 in `{s}`"));
            }
            Ok(v)
        };
        match kind {
            "const" => Ok(SlackSpec::Const(list(rest)?[0])),
            "cycle" => Ok(SlackSpec::Cycle(list(rest)?)),
            "seq" => Ok(SlackSpec::Seq(list(rest)?)),
            "random" => {
                let mut parts = rest.split(':');
                let seed = parts
                    .next()
                    .unwrap_or_default()
                    .parse::<u64>()
                    .map_err(|e| format!("seed: {e}"))?;
                let max = match parts.next() {
                    Some(m) => m.parse::<i64>().map_err(|e| format!("max: {e}"))?,
                    None => 5,
                };
                if max < 1 {
                    return Err("random max must be >= 1".into());
                }
                Ok(SlackSpec::Random { seed, max })
            }
            _ => Err(format!("unknown slack kind `{kind}`")),
        }
    }
}

impl fmt::Display for SlackSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match self {
            SlackSpec::Const(v) => write!(f, "const:{v}"),
            SlackSpec::Cycle(v) => write!(f, "cycle:{}", join(v)),
            SlackSpec::Seq(v) => write!(f, "seq:{}", join(v)),
            SlackSpec::Random { seed, max } => write!(f, "random:{seed}:{max}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodProbe {
    pub period: i64,
    /// Some `x ∈ W` with `x + period ∉ W` in the scanned tail, if found.
    pub violation: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm4Report {
    pub k: usize,
    pub gaps_ok: bool,
    pub first_bad_gap: Option<Run>,
    pub sequences_ok: bool,
    pub sequence_failures: Vec<String>,
    pub coverage_window: Run,
    pub coverage_ok: bool,
    pub first_uncovered: Option<i64>,
    pub uniqueness_ok: bool,
    /// `(j, l)` pairs with `d_j - c_l ∈ W` for `l ≠ j`, or `(j, j)` when the
    /// expected representation is missing.
    pub uniqueness_failures: Vec<(usize, usize)>,
    /// Scanned tail for the periodicity heuristic.
    pub tail_window: Run,
    pub periodicity: Vec<PeriodProbe>,
}

impl Thm4Report {
    /// Checks (1)-(3) and the sequence invariants; the periodicity probe is
    /// heuristic and does not count.
    pub fn passed(&self) -> bool {
        self.gaps_ok && self.sequences_ok && self.coverage_ok && self.uniqueness_ok
    }

    /// Periods for which the tail looked periodic.
    pub fn periodic_looking(&self) -> Vec<i64> {
        self.periodicity
            .iter()
            .filter(|p| p.violation.is_none())
            .map(|p| p.period)
            .collect()
    }
}

/// Re-verifies a state on `[d_k, window_hi]`.
///
/// The prefix decides membership of every sum `n` with `n < -c_k`, so
/// `window_hi` must stay below that bound. Periods `1..=p_max` are probed on
/// the newest interval `[-2c_{k-1}, -2c_k - 1]`.
pub fn thm4_verify(state: &Thm4State, window_hi: i64, p_max: i64) -> Result<Thm4Report, Thm4Error> {
    let k = state.k();
    let c_k = *state.c_seq.last().unwrap();
    let d_k = *state.d_seq.last().unwrap();
    let bound = -c_k;
    if window_hi >= bound {
        return Err(Thm4Error::PrefixTooShort { window_hi, bound });
    }

    let first_bad_gap = state
        .runs
        .windows(2)
        .find(|w| w[1].0 - w[0].1 != 2)
        .map(|w| (w[0].1, w[1].0));

    let mut sequence_failures = Vec::new();
    for i in 1..k {
        let (d0, d1) = (state.d_seq[i - 1], state.d_seq[i]);
        let (c0, c1) = (state.c_seq[i - 1], state.c_seq[i]);
        if d1 > d0 - 2 {
            sequence_failures.push(format!("d_{} = {d1} > d_{} - 2 = {}", i + 1, i, d0 - 2));
        }
        if c1 >= c0 {
            sequence_failures.push(format!("c_{} = {c1} >= c_{} = {c0}", i + 1, i));
        }
        if c1 >= d1 + 2 * c0 {
            sequence_failures.push(format!("c_{} = {c1} violates c_i < d_i + 2c_(i-1)", i + 1));
        }
    }
    if state.d_seq[0] != -1 || state.c_seq[0] != -3 || state.runs.first() != Some(&(1, 12)) {
        sequence_failures.push("base case differs from d_1 = -1, c_1 = -3, W_1 = {1..12}".into());
    }

    let coverage_window = (d_k, window_hi);
    let mut sums: Vec<Run> = state
        .c_seq
        .iter()
        .flat_map(|&c| state.runs.iter().map(move |&(a, b)| (a + c, b + c)))
        .collect();
    let sums = merge_runs(&mut sums);
    let first_uncovered = first_gap_in(&sums, d_k, window_hi);

    let mut uniqueness_failures = Vec::new();
    for (j, &d) in state.d_seq.iter().enumerate() {
        if !state.contains(d - state.c_seq[j]) {
            uniqueness_failures.push((j + 1, j + 1));
        }
        for (l, &c) in state.c_seq.iter().enumerate() {
            if l != j && state.contains(d - c) {
                uniqueness_failures.push((j + 1, l + 1));
            }
        }
    }

    let tail_window = if k >= 2 {
        (-2 * state.c_seq[k - 2], -2 * c_k - 1)
    } else {
        state.runs[0]
    };
    let periodicity = (1..=p_max)
        .map(|p| PeriodProbe {
            period: p,
            violation: tail_violation(state, tail_window, p),
        })
        .collect();

    Ok(Thm4Report {
        k,
        gaps_ok: first_bad_gap.is_none(),
        first_bad_gap,
        sequences_ok: sequence_failures.is_empty(),
        sequence_failures,
        coverage_window,
        coverage_ok: first_uncovered.is_none(),
        first_uncovered,
        uniqueness_ok: uniqueness_failures.is_empty(),
        uniqueness_failures,
        tail_window,
        periodicity,
    })
}

/// Some `x` in `[lo, hi - p]` with `x ∈ W`, `x + p ∉ W`.
fn tail_violation(state: &Thm4State, (lo, hi): Run, p: i64) -> Option<i64> {
    // x + p must sit in a hole between runs inside the window.
    state
        .runs
        .windows(2)
        .flat_map(|w| w[0].1 + 1..w[1].0)
        .filter(|&g| g - p >= lo && g <= hi)
        .map(|g| g - p)
        .find(|&x| state.contains(x))
}

fn in_runs(runs: &[Run], n: i64) -> bool {
    let i = runs.partition_point(|r| r.0 <= n);
    i > 0 && n <= runs[i - 1].1
}

/// First integer of `[lo, hi]` not covered by the sorted, merged runs.
fn first_gap_in(runs: &[Run], lo: i64, hi: i64) -> Option<i64> {
    let mut next = lo;
    for &(a, b) in runs {
        if b < next {
            continue;
        }
        if a > next {
            break;
        }
        next = b + 1;
        if next > hi {
            return None;
        }
    }
    (next <= hi).then_some(next)
}

/// Sorts and coalesces overlapping or touching runs into maximal runs.
fn merge_runs(runs: &mut [Run]) -> Vec<Run> {
    runs.sort_unstable();
    let mut out: Vec<Run> = Vec::with_capacity(runs.len());
    for &(a, b) in runs.iter() {
        match out.last_mut() {
            Some(last) if a <= last.1 + 1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    k: usize,
    d_seq: Vec<i64>,
    c_seq: Vec<i64>,
    slack_seq: Vec<i64>,
    w_runs: Vec<Run>,
}

impl From<Thm4State> for StateRepr {
    fn from(s: Thm4State) -> Self {
        Self {
            k: s.k(),
            d_seq: s.d_seq,
            c_seq: s.c_seq,
            slack_seq: s.slack_seq,
            w_runs: s.runs,
        }
    }
}

impl TryFrom<StateRepr> for Thm4State {
    type Error = Thm4Error;

    fn try_from(r: StateRepr) -> Result<Self, Thm4Error> {
        let bad = |why: &str| Err(Thm4Error::InvalidState(why.into()));
        if r.k == 0 || r.d_seq.len() != r.k || r.c_seq.len() != r.k || r.slack_seq.len() + 1 != r.k
        {
            return bad("sequence lengths do not match k");
        }
        if r.w_runs.is_empty() || r.w_runs.iter().any(|&(a, b)| a > b) {
            return bad("runs must be nonempty closed intervals");
        }
        if r.w_runs.windows(2).any(|w| w[1].0 <= w[0].1 + 1) {
            return bad("runs must be sorted, disjoint and maximal");
        }
        if r.slack_seq.iter().any(|&s| s < 1) {
            return bad("slack values must be >= 1");
        }
        Ok(Thm4State {
            d_seq: r.d_seq,
            c_seq: r.c_seq,
            slack_seq: r.slack_seq,
            runs: r.w_runs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn base_case() {
        let s = thm4_init();
        assert_eq!((s.d_seq(), s.c_seq()), (&[-1][..], &[-3][..]));
        assert_eq!(s.elements(i64::MIN, i64::MAX), (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn second_and_third_steps() {
        let s = thm4_init();
        assert_eq!(next_d(&s), -3);
        assert_eq!(choose_c(&s, -3, 1).unwrap(), -14);
        let s2 = thm4_step(&s, 1).unwrap();
        assert_eq!(s2.runs(), &[(1, 12), (14, 27)]);
        assert_eq!(s2.excluded_at(2), vec![13]);
        assert_eq!(next_d(&s2), -14);
        assert_eq!(choose_c(&s2, -14, 1).unwrap(), -43);
    }

    #[test]
    fn bare_strict_rule_would_collide_at_step_two() {
        // Without the guard c_2 = -10 would exclude 9 ∈ W_1.
        let s = thm4_init();
        let d2 = next_d(&s);
        assert_eq!(d2 + 2 * -3 - 1, -10);
        assert!(s.contains(-(-10) + s.d_seq()[0]));
    }

    #[test]
    fn invalid_slack() {
        assert_eq!(
            choose_c(&thm4_init(), -3, 0),
            Err(Thm4Error::InvalidSlack(0))
        );
        assert!("cycle:1,0".parse::<SlackSpec>().is_err());
        assert!("wobble:1".parse::<SlackSpec>().is_err());
    }

    #[test]
    fn slack_specs() {
        let c: SlackSpec = "cycle:1,2,3".parse().unwrap();
        assert_eq!(
            (2..6).map(|i| c.value(i)).collect::<Vec<_>>(),
            vec![3, 1, 2, 3]
        );
        let s: SlackSpec = "seq:4,2".parse().unwrap();
        assert_eq!(
            (2..6).map(|i| s.value(i)).collect::<Vec<_>>(),
            vec![4, 2, 2, 2]
        );
        let r: SlackSpec = "random:7:5".parse().unwrap();
        assert!((2..40).all(|i| (1..=5).contains(&r.value(i))));
        assert_eq!(r.value(9), r.value(9));
        assert_eq!(r.to_string().parse::<SlackSpec>().unwrap(), r);
    }

    #[test]
    fn verify_ten_steps() {
        let s = thm4_generate(10, |_| 1).unwrap();
        let report = thm4_verify(&s, -s.c_seq()[7] - 1, 50).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(matches!(
            thm4_verify(&s, -s.c_seq()[9], 10),
            Err(Thm4Error::PrefixTooShort { .. })
        ));
    }

    #[test]
    fn uniqueness_at_d2() {
        let s = thm4_generate(3, |_| 1).unwrap();
        // -3 = c_1 + 0 (0 ∉ W) = c_2 + 11 (11 ∈ W)
        assert!(!s.contains(-3 - -3));
        assert!(s.contains(-3 - -14));
    }

    #[test]
    fn runs_match_explicit_sets_for_small_k() {
        // Rebuild W_k by the literal rule on explicit sets.
        for slack in 1..=3 {
            let s = thm4_generate(5, |_| slack).unwrap();
            let mut w: BTreeSet<i64> = (1..=12).collect();
            for i in 2..=5 {
                let (cp, ci) = (s.c_seq()[i - 2], s.c_seq()[i - 1]);
                let ex: BTreeSet<i64> = s.d_seq()[..i - 1].iter().map(|d| d - ci).collect();
                w.extend((-2 * cp..=-2 * ci - 1).filter(|x| !ex.contains(x)));
            }
            let got: BTreeSet<i64> = s.elements(i64::MIN, i64::MAX).into_iter().collect();
            assert_eq!(got, w);
        }
    }

    #[test]
    fn state_round_trips_and_resumes() {
        let spec: SlackSpec = "cycle:1,2,3".parse().unwrap();
        let s6 = thm4_generate(6, |i| spec.value(i)).unwrap();
        let json = serde_json::to_string(&s6).unwrap();
        let back: Thm4State = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s6);
        let resumed = thm4_resume(back, 9, |i| spec.value(i)).unwrap();
        assert_eq!(resumed, thm4_generate(9, |i| spec.value(i)).unwrap());

        let broken = json.replace("\"k\":6", "\"k\":5");
        assert!(serde_json::from_str::<Thm4State>(&broken).is_err());
    }
}
