//! Finite windows of an explicit minimal complement.
//!
//! Given a sufficient certificate `(T, C)`, let `C1 = (C + X_T) mod T` and
//! `C2` its complement. Every integer in a `C1` class is reached from the
//! periodic part of `W` by any element of the matching `C` class far enough
//! below it; integers in `C2` classes can only be reached through `Y1`. The
//! complement `D'` is therefore any irredundant subset of the classes of `C`
//! whose `Y1`-translates cover the `C2` classes. On a window this is built by
//! greedy pruning in descending order, and every survivor keeps a private
//! target: a `C2` integer that no other survivor reaches through `Y1`.

use serde::{Deserialize, Serialize};

use crate::criteria::{Certificate, ConditionContext, Variant};
use crate::error::WitnessError;
use crate::residue::ResidueSubset;
use crate::sets::{CanonicalSet, Margins};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessWindow {
    pub lo: i64,
    pub hi: i64,
    pub t: usize,
    pub c: ResidueSubset,
    pub margins: Margins,
    pub c1: ResidueSubset,
    pub c2: ResidueSubset,
    /// The part of `D'` in `[lo - y_plus, hi - y_minus]`, ascending.
    pub d_elements: Vec<i64>,
    /// Private target of each element of `d_elements` (same index). Elements
    /// whose coverage footprint leaves the window may have none.
    pub private_targets: Vec<Option<i64>>,
}

impl WitnessWindow {
    /// `[lo + y0_margin + T, hi - y0_margin - T]`, where representations are
    /// not affected by elements outside the materialized window.
    pub fn safe_window(&self) -> (i64, i64) {
        let pad = self.margins.y0_margin + self.t as i64;
        (self.lo + pad, self.hi - pad)
    }

    pub fn private_target_of(&self, d: i64) -> Option<i64> {
        let i = self.d_elements.binary_search(&d).ok()?;
        self.private_targets[i]
    }

    /// Removes `d` (and its provenance), returning whether it was present.
    pub fn remove_element(&mut self, d: i64) -> bool {
        match self.d_elements.binary_search(&d) {
            Ok(i) => {
                self.d_elements.remove(i);
                self.private_targets.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    /// Inserts `d` with the given provenance, keeping the order.
    pub fn insert_element(&mut self, d: i64, target: Option<i64>) {
        if let Err(i) = self.d_elements.binary_search(&d) {
            self.d_elements.insert(i, d);
            self.private_targets.insert(i, target);
        }
    }
}

fn lift_for(set: &CanonicalSet, cert: &Certificate) -> Result<ConditionContext, WitnessError> {
    let invalid = |why: &str| WitnessError::CertificateInvalid(why.to_string());
    if cert.variant != Variant::Sufficient {
        return Err(invalid("certificate is not of the sufficient variant"));
    }
    if set.x_m().is_empty() || cert.t == 0 || cert.t % set.m() != 0 {
        return Err(invalid("period is not a multiple of m"));
    }
    if cert.c.modulus() != cert.t {
        return Err(invalid("subset modulus differs from the period"));
    }
    let ctx = set
        .lift_period(cert.t / set.m())
        .map_err(|e| WitnessError::CertificateInvalid(e.to_string()))?;
    if !cert.verify(&ctx) {
        return Err(invalid("conditions do not hold"));
    }
    Ok(ctx)
}

/// Builds the window `[lo, hi]` of a minimal complement from a sufficient
/// certificate.
pub fn build_witness(
    set: &CanonicalSet,
    cert: &Certificate,
    lo: i64,
    hi: i64,
) -> Result<WitnessWindow, WitnessError> {
    let ctx = lift_for(set, cert)?;
    let margins = set
        .margins()
        .ok_or_else(|| WitnessError::CertificateInvalid("Y1 is empty".into()))?;
    let t = cert.t as i64;
    let required = 4 * (margins.y0_margin + t);
    if hi - lo < required {
        return Err(WitnessError::WindowTooSmall { lo, hi, required });
    }
    let c1 = cert.c.sumset(ctx.x_t());
    let c2 = c1.complement();
    if c2.is_empty() {
        return Err(WitnessError::CertificateInvalid("C2 is empty".into()));
    }
    let y1 = set.y1();

    let pool_lo = lo - margins.y_plus;
    let pool_hi = hi - margins.y_minus;
    let mut pool: Vec<i64> = (pool_lo..=pool_hi)
        .filter(|&d| cert.c.contains_class(d))
        .collect();

    let is_target = |n: i64| (lo..=hi).contains(&n) && c2.contains_class(n);
    // Number of pool elements reaching each target through Y1.
    let mut cover = vec![0u32; (hi - lo + 1) as usize];
    let slot = |n: i64| (n - lo) as usize;
    for &d in &pool {
        for &y in y1 {
            if is_target(d + y) {
                cover[slot(d + y)] += 1;
            }
        }
    }
    if let Some(n) = (lo..=hi).find(|&n| is_target(n) && cover[slot(n)] == 0) {
        return Err(WitnessError::CertificateInvalid(format!(
            "target {n} is not reachable through Y1"
        )));
    }

    let prunable = |d: i64| d + margins.y_minus >= lo && d + margins.y_plus <= hi;
    let mut keep = vec![true; pool.len()];
    for i in (0..pool.len()).rev() {
        let d = pool[i];
        if !prunable(d) {
            continue;
        }
        let redundant = y1
            .iter()
            .filter(|&&y| is_target(d + y))
            .all(|&y| cover[slot(d + y)] >= 2);
        if redundant {
            keep[i] = false;
            for &y in y1 {
                if is_target(d + y) {
                    cover[slot(d + y)] -= 1;
                }
            }
        }
    }
    let mut kept = keep.iter();
    pool.retain(|_| *kept.next().unwrap());

    let private_targets = pool
        .iter()
        .map(|&d| {
            y1.iter()
                .map(|&y| d + y)
                .filter(|&n| is_target(n) && cover[slot(n)] == 1)
                .min()
        })
        .collect();

    Ok(WitnessWindow {
        lo,
        hi,
        t: cert.t,
        c: cert.c.clone(),
        margins,
        c1,
        c2,
        d_elements: pool,
        private_targets,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub passed: bool,
    pub checked_lo: i64,
    pub checked_hi: i64,
    pub checked: u64,
    pub first_uncovered: Option<i64>,
    /// A `C1` integer represented only through `Y0 ∪ Y1`, or a `C2` integer
    /// represented other than through `Y1`; either breaks the structure the
    /// minimality argument relies on.
    pub misrouted: Option<i64>,
}

/// Checks that every integer of the safe window is `d + w` with `d ∈ D'`,
/// `w ∈ W`, and that `C1` classes are reached through the periodic part and
/// `C2` classes through `Y1`.
pub fn verify_coverage(set: &CanonicalSet, w: &WitnessWindow) -> CoverageReport {
    let (a, b) = w.safe_window();
    let Some(c2) = recompute_c2(set, w) else {
        return CoverageReport {
            passed: false,
            checked_lo: a,
            checked_hi: b,
            checked: 0,
            first_uncovered: Some(a),
            misrouted: None,
        };
    };
    let t = w.t as i64;
    // Elements per class mod T; a periodic representation of n from class c
    // exists iff the largest element of that class not above n works.
    // Sorted locally so a hand-edited record cannot fool the lookups.
    let mut sorted = w.d_elements.clone();
    sorted.sort_unstable();
    let mut by_class: Vec<Vec<i64>> = vec![Vec::new(); w.t];
    for &d in &sorted {
        by_class[d.rem_euclid(t) as usize].push(d);
    }
    let has = |d: i64| sorted.binary_search(&d).is_ok();
    let mut first_uncovered = None;
    let mut misrouted = None;
    let mut checked = 0;
    for n in a..=b {
        checked += 1;
        let periodic = by_class.iter().any(|class| {
            let i = class.partition_point(|&d| d <= n);
            i > 0 && set.x_m().contains_class(n - class[i - 1])
        });
        let via_y1 = set.y1().iter().any(|&y| has(n - y));
        let via_y0 = set.y0().iter().any(|&y| has(n - y));
        if !(periodic || via_y1 || via_y0) && first_uncovered.is_none() {
            first_uncovered = Some(n);
        }
        let routed = if c2.contains_class(n) {
            via_y1 && !periodic
        } else {
            periodic
        };
        if !routed && misrouted.is_none() && (periodic || via_y1 || via_y0) {
            misrouted = Some(n);
        }
    }
    CoverageReport {
        passed: first_uncovered.is_none() && misrouted.is_none(),
        checked_lo: a,
        checked_hi: b,
        checked,
        first_uncovered,
        misrouted,
    }
}

/// `C2` recomputed from the set and the witness's `(T, C)`; `None` when the
/// period does not fit the set.
fn recompute_c2(set: &CanonicalSet, w: &WitnessWindow) -> Option<ResidueSubset> {
    if set.x_m().is_empty() || w.t == 0 || w.t % set.m() != 0 || w.c.modulus() != w.t {
        return None;
    }
    let ctx = set.lift_period(w.t / set.m()).ok()?;
    Some(w.c.sumset(ctx.x_t()).complement())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityFailure {
    pub d: i64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub passed: bool,
    pub checked: u64,
    pub failures: Vec<MinimalityFailure>,
}

/// Checks that every element in the safe window owns its recorded private
/// target.
///
/// A target `n` in a `C2` class has no representation through the periodic
/// part or `Y0` from elements in `C` classes, so all its representations are
/// `n - y` for `y ∈ Y1`; uniqueness among those proves that removing `d`
/// uncovers `n`.
pub fn verify_local_minimality(
    set: &CanonicalSet,
    w: &WitnessWindow,
) -> Result<MinimalityReport, WitnessError> {
    if w.d_elements.len() != w.private_targets.len() {
        return Err(WitnessError::Malformed(format!(
            "{} elements but {} private targets",
            w.d_elements.len(),
            w.private_targets.len()
        )));
    }
    if w.d_elements.windows(2).any(|p| p[0] >= p[1]) {
        return Err(WitnessError::Malformed(
            "elements are not strictly ascending".into(),
        ));
    }
    if let Some(&d) = w.d_elements.iter().find(|&&d| !w.c.contains_class(d)) {
        return Err(WitnessError::StructuralPremiseViolated(d));
    }
    let c2 = recompute_c2(set, w)
        .ok_or_else(|| WitnessError::CertificateInvalid("period does not fit the set".into()))?;
    let (a, b) = w.safe_window();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (&d, target) in w.d_elements.iter().zip(&w.private_targets) {
        if d < a || d > b {
            continue;
        }
        checked += 1;
        let fail = |reason: String| MinimalityFailure { d, reason };
        let Some(n) = *target else {
            failures.push(fail("no private target".into()));
            continue;
        };
        if !c2.contains_class(n) {
            failures.push(fail(format!("target {n} lies in a C1 class")));
            continue;
        }
        if set.y1().binary_search(&(n - d)).is_err() {
            failures.push(fail(format!("target {n} is not d + y for y in Y1")));
            continue;
        }
        let rivals: Vec<i64> = set
            .y1()
            .iter()
            .map(|&y| n - y)
            .filter(|&e| e != d && w.d_elements.binary_search(&e).is_ok())
            .collect();
        if !rivals.is_empty() {
            failures.push(fail(format!("target {n} is also reached from {rivals:?}")));
        }
    }
    Ok(MinimalityReport {
        passed: failures.is_empty(),
        checked,
        failures,
    })
}

/// Compares kept/pruned status of two witnesses on the first one's safe
/// window. Returns the elements on which they disagree.
pub fn stability_probe(narrow: &WitnessWindow, wide: &WitnessWindow) -> Vec<i64> {
    let (a, b) = narrow.safe_window();
    let pick = |w: &WitnessWindow| -> Vec<i64> {
        w.d_elements
            .iter()
            .copied()
            .filter(|d| (a..=b).contains(d))
            .collect()
    };
    let x = pick(narrow);
    let y = pick(wide);
    let mut diff: Vec<i64> = x
        .iter()
        .filter(|d| y.binary_search(d).is_err())
        .chain(y.iter().filter(|d| x.binary_search(d).is_err()))
        .copied()
        .collect();
    diff.sort_unstable();
    diff
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{decide, Outcome, SearchConfig};

    fn cert(t: usize, c: &[usize]) -> Certificate {
        Certificate {
            t,
            c: ResidueSubset::from_residues(t, c.iter().copied()).unwrap(),
            variant: Variant::Sufficient,
        }
    }

    #[test]
    fn evens_for_odd_singleton() {
        let s = CanonicalSet::validate(2, &[0], &[], &[1], 0).unwrap();
        let w = build_witness(&s, &cert(2, &[0]), -20, 20).unwrap();
        let evens: Vec<i64> = (-21..=19).filter(|d| d % 2 == 0).collect();
        assert_eq!(w.d_elements, evens);
        for (&d, t) in w.d_elements.iter().zip(&w.private_targets) {
            assert_eq!(*t, Some(d + 1));
        }
        assert!(verify_coverage(&s, &w).passed);
        assert!(verify_local_minimality(&s, &w).unwrap().passed);
    }

    #[test]
    fn two_exceptional_classes() {
        let s = CanonicalSet::validate(3, &[0], &[], &[1, 2], 0).unwrap();
        let w = build_witness(&s, &cert(3, &[0]), -30, 30).unwrap();
        assert!(w.d_elements.iter().all(|d| d % 3 == 0));
        assert!(verify_coverage(&s, &w).passed);
        let min = verify_local_minimality(&s, &w).unwrap();
        assert!(min.passed && min.checked > 0);
    }

    #[test]
    fn overlapping_translates_get_pruned() {
        // Y1 = {1, 3}: each odd target is reachable from two evens, so roughly
        // every other even survives.
        let s = CanonicalSet::validate(2, &[0], &[], &[1, 3], 0).unwrap();
        let v = decide(&s, &SearchConfig::default());
        assert_eq!(v.outcome, Outcome::Exists);
        let cert = v.certificate.unwrap();
        let w = build_witness(&s, &cert, -60, 60).unwrap();
        let all_evens = (-63..=59).filter(|d: &i64| d % 2 == 0).count();
        assert!(w.d_elements.len() < all_evens);
        assert!(verify_coverage(&s, &w).passed);
        assert!(verify_local_minimality(&s, &w).unwrap().passed);

        // Re-inserting a pruned element leaves it without a private target.
        let (a, b) = w.safe_window();
        let pruned = (a..=b)
            .find(|d| d % 2 == 0 && w.d_elements.binary_search(d).is_err())
            .unwrap();
        let mut bad = w.clone();
        bad.insert_element(pruned, None);
        let report = verify_local_minimality(&s, &bad).unwrap();
        assert!(!report.passed);
        assert!(report.failures.iter().any(|f| f.d == pruned));
    }

    #[test]
    fn deleting_an_element_uncovers_its_target() {
        let s = CanonicalSet::validate(2, &[0], &[], &[1], 0).unwrap();
        let mut w = build_witness(&s, &cert(2, &[0]), -20, 20).unwrap();
        let target = w.private_target_of(0).unwrap();
        assert!(w.remove_element(0));
        let report = verify_coverage(&s, &w);
        assert!(!report.passed);
        assert_eq!(report.first_uncovered, Some(target));
    }

    #[test]
    fn invalid_inputs() {
        let s = CanonicalSet::validate(2, &[0], &[], &[1], 0).unwrap();
        assert!(matches!(
            build_witness(&s, &cert(2, &[0]), -5, 5),
            Err(WitnessError::WindowTooSmall { .. })
        ));
        // C = {0, 1} has C2 = ∅ and fails (b).
        assert!(matches!(
            build_witness(&s, &cert(2, &[0, 1]), -20, 20),
            Err(WitnessError::CertificateInvalid(_))
        ));
        let mut nec = cert(2, &[0]);
        nec.variant = Variant::Necessary;
        assert!(build_witness(&s, &nec, -20, 20).is_err());

        let mut w = build_witness(&s, &cert(2, &[0]), -20, 20).unwrap();
        w.insert_element(1, None);
        assert_eq!(
            verify_local_minimality(&s, &w),
            Err(WitnessError::StructuralPremiseViolated(1))
        );
    }

    #[test]
    fn stable_when_no_element_is_prunable() {
        let s = CanonicalSet::validate(2, &[0], &[], &[1], 0).unwrap();
        let narrow = build_witness(&s, &cert(2, &[0]), -20, 20).unwrap();
        let wide = build_witness(&s, &cert(2, &[0]), -80, 80).unwrap();
        assert!(stability_probe(&narrow, &wide).is_empty());
    }
}
