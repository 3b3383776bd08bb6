//! Residue conditions for the existence of a minimal complement, the
//! certificate search built on them, and the verdict engine.
//!
//! For a working modulus `T` (a multiple of `m`) and `C ⊆ Z/TZ`:
//!
//! * (a) `C + (X_T ∪ Y1) ≡ Z/TZ`;
//! * (b) necessary form: every `c ∈ C` has some `y ∈ Y1` with
//!   `c + y ∉ C + X_T (mod T)`;
//! * (b) sufficient form: every `c ∈ C` has some `y ∈ Y1` with
//!   `c + y ∉ (C \ {c}) + (X_T ∪ Y1) (mod T)`.
//!
//! A minimal complement exists only if some `C` satisfies (a) and the
//! necessary (b) at `T = m`, and exists if some `C` satisfies (a) and the
//! sufficient (b) at some `T`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CriteriaError, SetError};
use crate::residue::ResidueSubset;
use crate::search::{self, KernelResult, Tables};
use crate::sets::{CanonicalSet, MAX_PERIOD};
use crate::stopwatch::Stopwatch;

/// The arena for evaluating conditions: modulus `T`, the lifted `X_T`, and the
/// residues of `Y1` mod `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionContext {
    t: usize,
    x_t: ResidueSubset,
    y1_res: ResidueSubset,
}

impl ConditionContext {
    /// A context given directly by residues. `X_T` and `Y1` must be disjoint.
    pub fn new(t: usize, x: &[usize], y1: &[usize]) -> Result<Self, CriteriaError> {
        if t == 0 {
            return Err(SetError::ZeroModulus.into());
        }
        let x_t = ResidueSubset::from_residues(t, x.iter().copied())?;
        let y1_res = ResidueSubset::from_residues(t, y1.iter().copied())?;
        if let Some(r) = x_t.intersection(&y1_res).iter().next() {
            return Err(CriteriaError::OverlappingContext(r));
        }
        Ok(Self { t, x_t, y1_res })
    }

    pub(crate) fn from_parts(t: usize, x_t: ResidueSubset, y1_res: ResidueSubset) -> Self {
        debug_assert!(x_t.is_disjoint(&y1_res));
        Self { t, x_t, y1_res }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn x_t(&self) -> &ResidueSubset {
        &self.x_t
    }

    pub fn y1_res(&self) -> &ResidueSubset {
        &self.y1_res
    }

    pub fn y1_nonempty(&self) -> bool {
        !self.y1_res.is_empty()
    }

    /// `X_T ∪ (Y1 mod T)`
    pub fn covering_set(&self) -> ResidueSubset {
        self.x_t.union(&self.y1_res)
    }

    fn check(&self, c: &ResidueSubset) -> Result<(), CriteriaError> {
        if c.modulus() != self.t {
            return Err(CriteriaError::ModulusMismatch {
                expected: self.t,
                found: c.modulus(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Necessary,
    Sufficient,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Necessary => "necessary",
            Variant::Sufficient => "sufficient",
        })
    }
}

/// Condition (a).
pub fn cond_a(ctx: &ConditionContext, c: &ResidueSubset) -> Result<bool, CriteriaError> {
    ctx.check(c)?;
    Ok(c.sumset(&ctx.covering_set()).is_full())
}

/// Necessary form of condition (b), via `C2 = Z/TZ \ (C + X_T)`: every `c`
/// needs some `c + y` in `C2`.
pub fn cond_b_necessary(ctx: &ConditionContext, c: &ResidueSubset) -> Result<bool, CriteriaError> {
    ctx.check(c)?;
    let c2 = c.sumset(&ctx.x_t).complement();
    Ok(c.iter()
        .all(|ci| ctx.y1_res.iter().any(|y| c2.contains((ci + y) % ctx.t))))
}

/// Necessary form of condition (b) evaluated by its quantifiers directly.
/// Slow path, kept to cross-check [`cond_b_necessary`].
pub fn cond_b_necessary_literal(
    ctx: &ConditionContext,
    c: &ResidueSubset,
) -> Result<bool, CriteriaError> {
    ctx.check(c)?;
    let t = ctx.t;
    Ok(c.iter().all(|ci| {
        ctx.y1_res.iter().any(|y| {
            c.iter()
                .all(|cj| ctx.x_t.iter().all(|x| (ci + y) % t != (cj + x) % t))
        })
    }))
}

/// Sufficient form of condition (b).
pub fn cond_b_sufficient(ctx: &ConditionContext, c: &ResidueSubset) -> Result<bool, CriteriaError> {
    ctx.check(c)?;
    let u = ctx.covering_set();
    Ok(c.iter().all(|ci| {
        let mut rest = c.clone();
        rest.remove(ci);
        let others = rest.sumset(&u);
        ctx.y1_res
            .iter()
            .any(|y| !others.contains((ci + y) % ctx.t))
    }))
}

pub fn cond_b(
    ctx: &ConditionContext,
    c: &ResidueSubset,
    variant: Variant,
) -> Result<bool, CriteriaError> {
    match variant {
        Variant::Necessary => cond_b_necessary(ctx, c),
        Variant::Sufficient => cond_b_sufficient(ctx, c),
    }
}

/// A period `T` and a subset `C ⊆ Z/TZ` satisfying (a) and the variant's (b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub t: usize,
    pub c: ResidueSubset,
    pub variant: Variant,
}

impl Certificate {
    /// Re-checks both conditions from scratch against `ctx`.
    pub fn verify(&self, ctx: &ConditionContext) -> bool {
        self.t == ctx.t
            && cond_a(ctx, &self.c).unwrap_or(false)
            && cond_b(ctx, &self.c, self.variant).unwrap_or(false)
    }

    /// Re-checks against the lift of `set` to this certificate's period.
    pub fn verify_for(&self, set: &CanonicalSet) -> bool {
        if set.x_m().is_empty() || self.t % set.m() != 0 {
            return false;
        }
        set.lift_period(self.t / set.m())
            .map(|ctx| self.verify(&ctx))
            .unwrap_or(false)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T={} C={:?} ({})", self.t, self.c.to_vec(), self.variant)
    }
}

/// Search limits for [`find_certificate`] and [`decide`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Largest working modulus tried by [`decide`]; `None` means `8·m`.
    pub t_max: Option<usize>,
    /// Moduli up to this size are searched completely in lexicographic order.
    pub exhaustive_limit: usize,
    /// Node budget of the cover-driven search used above the limit.
    pub heuristic_budget: u64,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            t_max: None,
            exhaustive_limit: 24,
            heuristic_budget: 2_000_000,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn t_max_for(&self, m: usize) -> usize {
        self.t_max.unwrap_or(8 * m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    CoverDriven,
}

/// Detailed result of a certificate search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub certificate: Option<Certificate>,
    /// `true` when the whole space was explored, so a missing certificate
    /// proves that none exists at this modulus.
    pub complete: bool,
    pub mode: SearchMode,
    pub nodes: u64,
}

/// Runs the certificate search and reports completeness.
///
/// At `T ≤ exhaustive_limit` the result is the lexicographically smallest
/// sorted `C` containing 0. Above the limit a cover-driven search returns some
/// valid `C`; it is incomplete when the node budget runs out.
pub fn search_certificate(
    ctx: &ConditionContext,
    variant: Variant,
    cfg: &SearchConfig,
) -> SearchReport {
    let mode = if ctx.t <= cfg.exhaustive_limit {
        SearchMode::Exhaustive
    } else {
        SearchMode::CoverDriven
    };
    let KernelResult {
        found,
        complete,
        nodes,
    } = if ctx.t <= 64 {
        let tab = Tables::<u64>::new(ctx, variant);
        match mode {
            SearchMode::Exhaustive => search::lexicographic(&tab, cfg.workers),
            SearchMode::CoverDriven => search::cover_driven(&tab, cfg.heuristic_budget),
        }
    } else {
        let tab = Tables::<ResidueSubset>::new(ctx, variant);
        match mode {
            SearchMode::Exhaustive => search::lexicographic(&tab, cfg.workers),
            SearchMode::CoverDriven => search::cover_driven(&tab, cfg.heuristic_budget),
        }
    };
    let certificate = found.map(|members| {
        let c = ResidueSubset::from_residues(ctx.t, members).expect("search yields residues");
        let cert = Certificate {
            t: ctx.t,
            c,
            variant,
        };
        assert!(
            cert.verify(ctx),
            "search produced an invalid certificate {cert}"
        );
        cert
    });
    SearchReport {
        certificate,
        complete,
        mode,
        nodes,
    }
}

/// Looks for a certificate at the context's modulus.
///
/// `Ok(None)` means no valid `C` exists. When the cover-driven search runs
/// out of budget the answer is `Err(BudgetExceeded)`.
pub fn find_certificate(
    ctx: &ConditionContext,
    variant: Variant,
    cfg: &SearchConfig,
) -> Result<Option<Certificate>, CriteriaError> {
    let report = search_certificate(ctx, variant, cfg);
    if report.certificate.is_none() && !report.complete {
        return Err(CriteriaError::BudgetExceeded(cfg.heuristic_budget));
    }
    Ok(report.certificate)
}

/// Exact decision when `Y1` occupies a single residue class mod `m`.
///
/// With one exceptional class the two forms of (b) coincide, so the search at
/// `T = m` settles existence either way.
pub fn check_singleton(set: &CanonicalSet) -> Result<Option<Certificate>, CriteriaError> {
    let classes = ResidueSubset::from_integers(set.m(), set.y1()).len();
    if classes != 1 {
        return Err(CriteriaError::NotSingleton(classes));
    }
    let ctx = set.lift_period(1)?;
    let cfg = SearchConfig {
        exhaustive_limit: usize::MAX,
        ..SearchConfig::default()
    };
    Ok(search_certificate(&ctx, Variant::Sufficient, &cfg).certificate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Exists,
    NotExists,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Exists => "exists",
            Outcome::NotExists => "not-exists",
            Outcome::Unknown => "unknown",
        })
    }
}

/// Why a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    /// `W` is empty, so no complement exists at all.
    EmptySet,
    /// Nonempty finite `W`: every complement contains a minimal one.
    FiniteSet,
    /// `Y1 = ∅` (quasiperiodic `W`): condition (b) cannot hold.
    Quasiperiodic,
    /// No `C` satisfies (a) and the necessary (b) at this modulus.
    NecessaryConditionFails { modulus: usize },
    /// A sufficient certificate at the base period `m`.
    CertificateAtBasePeriod { modulus: usize },
    /// A sufficient certificate at a lifted period `T > m`.
    CertificateAtLiftedPeriod { modulus: usize },
    /// Nothing conclusive for any `T ≤ t_max`.
    SearchExhausted { t_max: usize },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::EmptySet => write!(f, "empty set"),
            Reason::FiniteSet => write!(f, "finite set (every complement contains a minimal one)"),
            Reason::Quasiperiodic => write!(f, "quasiperiodic (Y1 empty)"),
            Reason::NecessaryConditionFails { modulus } => {
                write!(f, "necessary condition fails at modulus {modulus}")
            }
            Reason::CertificateAtBasePeriod { modulus } => {
                write!(f, "sufficient certificate at base period {modulus}")
            }
            Reason::CertificateAtLiftedPeriod { modulus } => {
                write!(f, "sufficient certificate at lifted period {modulus}")
            }
            Reason::SearchExhausted { t_max } => write!(f, "inconclusive up to T = {t_max}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub subsets_examined: u64,
    /// `(T, variant, complete)` for every search run, in order.
    pub searches: Vec<SearchTrace>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub t: usize,
    pub variant: Variant,
    pub mode: SearchMode,
    pub complete: bool,
    pub found: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub reason: Reason,
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
}

impl Verdict {
    fn settled(outcome: Outcome, reason: Reason) -> Self {
        Self {
            outcome,
            reason,
            certificate: None,
            stats: SearchStats::default(),
        }
    }
}

/// Decides whether the canonical set has a minimal complement.
///
/// Branches in order: empty `W`, finite `W`, `Y1 = ∅`, the necessary
/// conditions at `T = m`, the sufficient conditions at `T = m`, then for
/// `T = 2m, 3m, … ≤ t_max` the necessary and sufficient conditions at the
/// lifted modulus. `NotExists` is only reported from complete searches.
pub fn decide(set: &CanonicalSet, cfg: &SearchConfig) -> Verdict {
    let clock = Stopwatch::start();
    let mut verdict = decide_inner(set, cfg);
    verdict.stats.wall_time_ms = clock.elapsed_ms();
    verdict
}

fn decide_inner(set: &CanonicalSet, cfg: &SearchConfig) -> Verdict {
    if set.is_empty() {
        return Verdict::settled(Outcome::NotExists, Reason::EmptySet);
    }
    if set.is_finite() {
        return Verdict::settled(Outcome::Exists, Reason::FiniteSet);
    }
    if set.y1().is_empty() {
        return Verdict::settled(Outcome::NotExists, Reason::Quasiperiodic);
    }
    let m = set.m();
    let t_max = cfg.t_max_for(m).min(MAX_PERIOD);
    let mut stats = SearchStats::default();
    let run = |t: usize, variant: Variant, stats: &mut SearchStats| -> Option<SearchReport> {
        let ctx = set.lift_period(t / m).ok()?;
        let report = search_certificate(&ctx, variant, cfg);
        stats.subsets_examined += report.nodes;
        stats.searches.push(SearchTrace {
            t,
            variant,
            mode: report.mode,
            complete: report.complete,
            found: report.certificate.is_some(),
            nodes: report.nodes,
        });
        Some(report)
    };

    let mut t = m;
    while t <= t_max.max(m) {
        let Some(nec) = run(t, Variant::Necessary, &mut stats) else {
            break;
        };
        if nec.certificate.is_none() && nec.complete {
            if t > m {
                log::warn!("necessary condition fails at lifted modulus {t} but held at m = {m}");
            }
            return Verdict {
                outcome: Outcome::NotExists,
                reason: Reason::NecessaryConditionFails { modulus: t },
                certificate: None,
                stats,
            };
        }
        let Some(suf) = run(t, Variant::Sufficient, &mut stats) else {
            break;
        };
        if let Some(cert) = suf.certificate {
            let reason = if t == m {
                Reason::CertificateAtBasePeriod { modulus: t }
            } else {
                Reason::CertificateAtLiftedPeriod { modulus: t }
            };
            return Verdict {
                outcome: Outcome::Exists,
                reason,
                certificate: Some(cert),
                stats,
            };
        }
        t += m;
    }
    Verdict {
        outcome: Outcome::Unknown,
        reason: Reason::SearchExhausted { t_max },
        certificate: None,
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(t: usize, x: &[usize], y: &[usize]) -> ConditionContext {
        ConditionContext::new(t, x, y).unwrap()
    }

    fn sub(t: usize, r: &[usize]) -> ResidueSubset {
        ResidueSubset::from_residues(t, r.iter().copied()).unwrap()
    }

    #[test]
    fn cond_a_examples() {
        assert!(cond_a(&ctx(3, &[0], &[1]), &sub(3, &[0, 2])).unwrap());
        assert!(!cond_a(&ctx(3, &[0], &[1]), &sub(3, &[])).unwrap());
        assert!(!cond_a(&ctx(5, &[2, 3], &[4]), &sub(5, &[0, 1])).unwrap());
    }

    #[test]
    fn cond_b_necessary_examples() {
        assert!(!cond_b_necessary(&ctx(3, &[0], &[1]), &sub(3, &[0, 1])).unwrap());
        assert!(!cond_b_necessary(&ctx(3, &[0], &[]), &sub(3, &[0])).unwrap());
        assert!(cond_b_necessary(&ctx(4, &[0, 2], &[1]), &sub(4, &[0, 2])).unwrap());
    }

    #[test]
    fn cond_b_sufficient_examples() {
        assert!(cond_b_sufficient(&ctx(2, &[0], &[1]), &sub(2, &[0])).unwrap());
        assert!(!cond_b_sufficient(&ctx(5, &[2, 3], &[4]), &sub(5, &[0, 2])).unwrap());
        assert!(cond_b_sufficient(&ctx(4, &[0, 2], &[1]), &sub(4, &[0, 2])).unwrap());
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let c = ctx(4, &[0], &[1]);
        assert_eq!(
            cond_a(&c, &sub(5, &[0])),
            Err(CriteriaError::ModulusMismatch {
                expected: 4,
                found: 5
            })
        );
        assert!(cond_b_sufficient(&c, &sub(3, &[0])).is_err());
    }

    #[test]
    fn overlapping_context_rejected() {
        assert_eq!(
            ConditionContext::new(4, &[0, 1], &[1]),
            Err(CriteriaError::OverlappingContext(1))
        );
    }

    #[test]
    fn find_certificate_examples() {
        let cfg = SearchConfig::default();
        let cert = find_certificate(&ctx(2, &[0], &[1]), Variant::Sufficient, &cfg)
            .unwrap()
            .unwrap();
        assert_eq!(cert.c.to_vec(), vec![0]);
        assert_eq!(
            find_certificate(&ctx(3, &[0], &[1]), Variant::Necessary, &cfg).unwrap(),
            None
        );
        assert_eq!(
            find_certificate(&ctx(5, &[2, 3], &[4]), Variant::Necessary, &cfg).unwrap(),
            None
        );
    }

    #[test]
    fn cover_driven_mode_agrees_on_existence() {
        let exhaustive = SearchConfig::default();
        let cover = SearchConfig {
            exhaustive_limit: 0,
            ..SearchConfig::default()
        };
        for (t, x, y) in [
            (2, vec![0], vec![1]),
            (3, vec![0], vec![1]),
            (3, vec![0], vec![1, 2]),
            (5, vec![2, 3], vec![4]),
            (8, vec![0, 4], vec![1, 6]),
            (12, vec![0, 3, 6, 9], vec![1, 5]),
        ] {
            let c = ctx(t, &x, &y);
            for v in [Variant::Necessary, Variant::Sufficient] {
                let a = search_certificate(&c, v, &exhaustive);
                let b = search_certificate(&c, v, &cover);
                assert!(b.complete);
                assert_eq!(
                    a.certificate.is_some(),
                    b.certificate.is_some(),
                    "T={t} {v}"
                );
                if let Some(cert) = b.certificate {
                    assert!(cert.verify(&c));
                }
            }
        }
    }

    #[test]
    fn tiny_budget_reports_budget_exceeded() {
        let cfg = SearchConfig {
            exhaustive_limit: 0,
            heuristic_budget: 1,
            ..SearchConfig::default()
        };
        let c = ctx(12, &[0, 3, 6, 9], &[1, 5]);
        assert_eq!(
            find_certificate(&c, Variant::Sufficient, &cfg),
            Err(CriteriaError::BudgetExceeded(1))
        );
    }

    #[test]
    fn wide_modulus_uses_generic_lanes() {
        // m = 70 > 64 exercises the multi-word kernel.
        let x: Vec<i64> = (0..70).filter(|r| r % 2 == 0).collect();
        let set = CanonicalSet::validate(70, &x, &[], &[1], 0).unwrap();
        let ctx = set.lift_period(1).unwrap();
        let cfg = SearchConfig::default();
        let report = search_certificate(&ctx, Variant::Sufficient, &cfg);
        assert_eq!(report.mode, SearchMode::CoverDriven);
        let cert = report.certificate.expect("C = {0} covers via Y1 = {1}");
        assert!(cert.verify(&ctx));
    }

    #[test]
    fn check_singleton_examples() {
        let s = CanonicalSet::validate(2, &[0], &[], &[1], 0).unwrap();
        let cert = check_singleton(&s).unwrap().unwrap();
        assert_eq!((cert.t, cert.c.to_vec()), (2, vec![0]));

        let s = CanonicalSet::validate(3, &[0], &[], &[1], 0).unwrap();
        assert_eq!(check_singleton(&s).unwrap(), None);
        let s = CanonicalSet::validate(3, &[0], &[], &[4], 0).unwrap();
        assert_eq!(check_singleton(&s).unwrap(), None);

        let s = CanonicalSet::validate(3, &[0], &[], &[1, 2], 0).unwrap();
        assert_eq!(check_singleton(&s), Err(CriteriaError::NotSingleton(2)));
    }

    #[test]
    fn decide_examples() {
        let cfg = SearchConfig::default();
        let worked = CanonicalSet::validate(5, &[2, 3], &[-3], &[-1, 4], 5).unwrap();
        let v = decide(&worked, &cfg);
        assert_eq!(v.outcome, Outcome::NotExists);
        assert_eq!(v.reason, Reason::NecessaryConditionFails { modulus: 5 });

        let s = CanonicalSet::validate(2, &[0], &[], &[1], 0).unwrap();
        let v = decide(&s, &cfg);
        assert_eq!(v.outcome, Outcome::Exists);
        assert_eq!(v.reason, Reason::CertificateAtBasePeriod { modulus: 2 });
        assert_eq!(v.certificate.unwrap().c.to_vec(), vec![0]);

        let s = CanonicalSet::validate(3, &[0], &[-3, -6], &[], 0).unwrap();
        assert_eq!(decide(&s, &cfg).reason, Reason::Quasiperiodic);

        let s = CanonicalSet::validate(3, &[0], &[], &[1, 2], 0).unwrap();
        let v = decide(&s, &cfg);
        assert_eq!(v.outcome, Outcome::Exists);
        assert_eq!(v.certificate.unwrap().c.to_vec(), vec![0]);
    }

    #[test]
    fn decide_trivial_branches() {
        let cfg = SearchConfig::default();
        let finite = CanonicalSet::validate(2, &[], &[], &[-4, 1], 0).unwrap();
        let v = decide(&finite, &cfg);
        assert_eq!((v.outcome, v.reason), (Outcome::Exists, Reason::FiniteSet));
        assert!(v.certificate.is_none());

        let empty = CanonicalSet::validate(2, &[], &[], &[], 0).unwrap();
        assert_eq!(decide(&empty, &cfg).reason, Reason::EmptySet);
    }

    #[test]
    fn certificate_only_after_lifting() {
        let s = CanonicalSet::validate(6, &[0, 1, 3], &[], &[2, 5], 0).unwrap();
        let v = decide(
            &s,
            &SearchConfig {
                t_max: Some(18),
                ..Default::default()
            },
        );
        assert_eq!(v.outcome, Outcome::Exists);
        assert_eq!(v.reason, Reason::CertificateAtLiftedPeriod { modulus: 18 });
        assert!(v.certificate.unwrap().verify_for(&s));

        let v = decide(
            &s,
            &SearchConfig {
                t_max: Some(12),
                ..Default::default()
            },
        );
        assert_eq!(v.outcome, Outcome::Unknown);
    }
}
