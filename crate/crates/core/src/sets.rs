//! Eventually periodic sets bounded below and their canonical form
//! `W = (mN + X_m) ∪ Y0 ∪ Y1`.
//!
//! A [`RawSet`] is the user-facing finite description (period, residue
//! pattern, match threshold, finite extras). [`canonicalize`] shifts it so the
//! periodic part starts at 0; the shift is the smallest multiple of `m` that is
//! at least the threshold, which leaves the residue pattern untouched.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::criteria::ConditionContext;
use crate::error::SetError;
use crate::residue::{reduce, ResidueSubset};

/// Largest working modulus accepted by [`CanonicalSet::lift_period`].
pub const MAX_PERIOD: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `inf W > -inf`; the periodic part extends upward from the threshold.
    Below,
    /// `sup W < +inf`; the periodic part extends downward from the threshold.
    Above,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Below => "below",
            Orientation::Above => "above",
        })
    }
}

/// Finite description of an eventually periodic set.
///
/// Below-bounded: `n ∈ W ⟺ (n ≥ threshold ∧ n mod period ∈ residues) ∨ n ∈ extras`,
/// with every extra strictly below the threshold. Above-bounded sets mirror
/// this (`n ≤ threshold`, extras strictly above). When the residue pattern is
/// empty the set is finite and the threshold places no constraint on extras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawRepr", try_from = "RawRepr")]
pub struct RawSet {
    period: usize,
    residues: ResidueSubset,
    threshold: i64,
    extras: Vec<i64>,
    orientation: Orientation,
}

impl RawSet {
    pub fn new(
        period: usize,
        residues: &[usize],
        threshold: i64,
        extras: &[i64],
        orientation: Orientation,
    ) -> Result<Self, SetError> {
        if period == 0 {
            return Err(SetError::ZeroModulus);
        }
        let residues = ResidueSubset::from_residues(period, residues.iter().copied())?;
        let extras = sorted_unique(extras)?;
        if !residues.is_empty() {
            for &e in &extras {
                let ok = match orientation {
                    Orientation::Below => e < threshold,
                    Orientation::Above => e > threshold,
                };
                if !ok {
                    return Err(SetError::ExtraNotBelowThreshold {
                        element: e,
                        threshold,
                    });
                }
            }
        }
        Ok(Self {
            period,
            residues,
            threshold,
            extras,
            orientation,
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn residues(&self) -> &ResidueSubset {
        &self.residues
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn extras(&self) -> &[i64] {
        &self.extras
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn contains(&self, n: i64) -> bool {
        let periodic = match self.orientation {
            Orientation::Below => n >= self.threshold,
            Orientation::Above => n <= self.threshold,
        } && self.residues.contains_class(n);
        periodic || self.extras.binary_search(&n).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.extras.is_empty()
    }

    /// The description of `W + d`.
    pub fn translate(&self, d: i64) -> Self {
        Self {
            period: self.period,
            residues: self.residues.translate(d),
            threshold: self.threshold + d,
            extras: self.extras.iter().map(|e| e + d).collect(),
            orientation: self.orientation,
        }
    }
}

/// Negates an above-bounded description, producing the below-bounded `-W`.
///
/// `C + W = Z ⟺ (-C) + (-W) = Z` and minimality transfers elementwise, so
/// existence of a minimal complement is unchanged. Below-bounded input is
/// negated the same way.
pub fn reflect(raw: &RawSet) -> RawSet {
    let period = raw.period;
    let mut residues = ResidueSubset::empty(period);
    for r in raw.residues.iter() {
        residues.insert(reduce(-(r as i64), period));
    }
    let mut extras: Vec<i64> = raw.extras.iter().map(|e| -e).collect();
    extras.sort_unstable();
    RawSet {
        period,
        residues,
        threshold: -raw.threshold,
        extras,
        orientation: match raw.orientation {
            Orientation::Below => Orientation::Above,
            Orientation::Above => Orientation::Below,
        },
    }
}

/// `W = (mN + X_m) ∪ Y0 ∪ Y1`, plus the shift back to the original set
/// (`W_original = W + shift`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CanonicalRepr", try_from = "CanonicalRepr")]
pub struct CanonicalSet {
    m: usize,
    x_m: ResidueSubset,
    y0: Vec<i64>,
    y1: Vec<i64>,
    shift: i64,
}

/// Spread of the exceptional elements `Y0 ∪ Y1`, used to size verification
/// windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Margins {
    pub y_plus: i64,
    pub y_minus: i64,
    /// `max(y_plus, -y_minus, y_plus - y_minus)`
    pub y0_margin: i64,
}

impl Margins {
    pub fn from_elements<'a, I: IntoIterator<Item = &'a i64>>(elements: I) -> Option<Self> {
        let mut it = elements.into_iter().copied();
        let first = it.next()?;
        let (lo, hi) = it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)));
        Some(Self {
            y_plus: hi,
            y_minus: lo,
            y0_margin: hi.max(-lo).max(hi - lo),
        })
    }
}

impl CanonicalSet {
    /// Checks the canonical-form constraints and returns the validated set.
    /// `x` lists residues; `y0`/`y1` may be given in any order.
    pub fn validate(
        m: usize,
        x: &[i64],
        y0: &[i64],
        y1: &[i64],
        shift: i64,
    ) -> Result<Self, SetError> {
        if m == 0 {
            return Err(SetError::ZeroModulus);
        }
        let mut x_m = ResidueSubset::empty(m);
        for &r in x {
            if r < 0 || r as u64 >= m as u64 {
                return Err(SetError::ResidueOutOfRange {
                    residue: r,
                    modulus: m,
                });
            }
            if x_m.contains(r as usize) {
                return Err(SetError::DuplicateElement(r));
            }
            x_m.insert(r as usize);
        }
        let y0 = sorted_unique(y0)?;
        let y1 = sorted_unique(y1)?;
        if x_m.is_empty() && !y0.is_empty() {
            return Err(SetError::Y0WithoutPeriodicPart);
        }
        for &e in &y0 {
            if e >= 0 {
                return Err(SetError::Y0NotNegative(e));
            }
            let residue = reduce(e, m);
            if !x_m.contains(residue) {
                return Err(SetError::Y0ResidueOutsideX {
                    element: e,
                    residue,
                });
            }
        }
        for &e in &y1 {
            let residue = reduce(e, m);
            if x_m.contains(residue) {
                return Err(SetError::Y1ResidueInsideX {
                    element: e,
                    residue,
                });
            }
        }
        Ok(Self {
            m,
            x_m,
            y0,
            y1,
            shift,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x_m(&self) -> &ResidueSubset {
        &self.x_m
    }

    pub fn y0(&self) -> &[i64] {
        &self.y0
    }

    pub fn y1(&self) -> &[i64] {
        &self.y1
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_empty(&self) -> bool {
        self.x_m.is_empty() && self.y0.is_empty() && self.y1.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.x_m.is_empty()
    }

    /// `None` when `Y0 ∪ Y1` is empty.
    pub fn margins(&self) -> Option<Margins> {
        Margins::from_elements(self.y0.iter().chain(&self.y1))
    }

    pub fn contains(&self, n: i64) -> bool {
        (n >= 0 && self.x_m.contains_class(n))
            || self.y0.binary_search(&n).is_ok()
            || self.y1.binary_search(&n).is_ok()
    }

    /// Elements of the canonical set in `[lo, hi]`, ascending.
    pub fn window_elements(&self, lo: i64, hi: i64) -> Vec<i64> {
        if lo > hi {
            return Vec::new();
        }
        let mut out: Vec<i64> = self
            .y0
            .iter()
            .chain(&self.y1)
            .copied()
            .filter(|v| (lo..=hi).contains(v))
            .collect();
        if !self.x_m.is_empty() {
            let start = lo.max(0);
            out.extend((start..=hi).filter(|&n| self.x_m.contains_class(n)));
        }
        out.sort_unstable();
        out
    }

    /// Re-expresses the periodic part at modulus `T = k·m`:
    /// `X_T = ∪_{i<k} (i·m + X_m)`, with `Y1` reduced mod `T`.
    pub fn lift_period(&self, k: usize) -> Result<ConditionContext, SetError> {
        if self.x_m.is_empty() {
            return Err(SetError::EmptyPeriodicPart);
        }
        let t = (k as u128) * (self.m as u128);
        if k == 0 || t > MAX_PERIOD as u128 {
            return Err(SetError::PeriodOverflow {
                period: t,
                max: MAX_PERIOD,
            });
        }
        let t = t as usize;
        let mut x_t = ResidueSubset::empty(t);
        for i in 0..k {
            for x in self.x_m.iter() {
                x_t.insert(i * self.m + x);
            }
        }
        let y1_res = ResidueSubset::from_integers(t, &self.y1);
        Ok(ConditionContext::from_parts(t, x_t, y1_res))
    }

    /// A below-bounded raw description with the same membership and shift 0.
    pub fn to_raw(&self) -> RawSet {
        let threshold = self.y1.iter().map(|&y| y + 1).max().unwrap_or(0).max(0);
        let mut extras: Vec<i64> = self.y0.iter().chain(&self.y1).copied().collect();
        if !self.x_m.is_empty() {
            extras.extend((0..threshold).filter(|&n| self.x_m.contains_class(n)));
        }
        extras.sort_unstable();
        RawSet {
            period: self.m,
            residues: self.x_m.clone(),
            threshold,
            extras,
            orientation: Orientation::Below,
        }
    }
}

/// Brings a below-bounded description into canonical form.
///
/// The shift `s` is the smallest multiple of the period with `s ≥ threshold`.
/// Extras and the periodic points in `[threshold, s)` move to `Y0` when their
/// residue lies in the pattern and to `Y1` otherwise.
pub fn canonicalize(raw: &RawSet) -> Result<CanonicalSet, SetError> {
    if raw.orientation != Orientation::Below {
        return Err(SetError::WrongOrientation { expected: "below" });
    }
    if raw.is_empty() {
        return Err(SetError::EmptySet);
    }
    let m = raw.period as i64;
    let shift = raw.threshold.div_euclid(m) * m
        + if raw.threshold.rem_euclid(m) == 0 {
            0
        } else {
            m
        };
    let mut y0 = Vec::new();
    let mut y1 = Vec::new();
    let filler = if raw.residues.is_empty() {
        0..0
    } else {
        raw.threshold..shift
    };
    let points = raw
        .extras
        .iter()
        .copied()
        .chain(filler.filter(|&n| raw.residues.contains_class(n)));
    for e in points {
        let v = e - shift;
        if raw.residues.contains_class(v) {
            y0.push(v);
        } else {
            y1.push(v);
        }
    }
    y0.sort_unstable();
    y1.sort_unstable();
    Ok(CanonicalSet {
        m: raw.period,
        x_m: raw.residues.clone(),
        y0,
        y1,
        shift,
    })
}

#[derive(Serialize, Deserialize)]
struct RawRepr {
    period: usize,
    residues: Vec<usize>,
    threshold: i64,
    extras: Vec<i64>,
    orientation: Orientation,
}

impl From<RawSet> for RawRepr {
    fn from(r: RawSet) -> Self {
        Self {
            period: r.period,
            residues: r.residues.to_vec(),
            threshold: r.threshold,
            extras: r.extras,
            orientation: r.orientation,
        }
    }
}

impl TryFrom<RawRepr> for RawSet {
    type Error = SetError;

    fn try_from(r: RawRepr) -> Result<Self, SetError> {
        RawSet::new(r.period, &r.residues, r.threshold, &r.extras, r.orientation)
    }
}

#[derive(Serialize, Deserialize)]
struct CanonicalRepr {
    m: usize,
    x: Vec<i64>,
    y0: Vec<i64>,
    y1: Vec<i64>,
    shift: i64,
}

impl From<CanonicalSet> for CanonicalRepr {
    fn from(c: CanonicalSet) -> Self {
        Self {
            m: c.m,
            x: c.x_m.iter().map(|r| r as i64).collect(),
            y0: c.y0,
            y1: c.y1,
            shift: c.shift,
        }
    }
}

impl TryFrom<CanonicalRepr> for CanonicalSet {
    type Error = SetError;

    fn try_from(c: CanonicalRepr) -> Result<Self, SetError> {
        CanonicalSet::validate(c.m, &c.x, &c.y0, &c.y1, c.shift)
    }
}

fn sorted_unique(values: &[i64]) -> Result<Vec<i64>, SetError> {
    let mut v = values.to_vec();
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(SetError::DuplicateElement(w[0]));
    }
    Ok(v)
}
