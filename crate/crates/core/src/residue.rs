//! Dense subsets of `Z/TZ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SetError;

const WORD: usize = 64;

/// A subset of `{0, .., modulus - 1}` stored one bit per residue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSubset {
    modulus: usize,
    words: Vec<u64>,
}

impl ResidueSubset {
    /// The empty subset. `modulus` must be positive.
    pub fn empty(modulus: usize) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self {
            modulus,
            words: vec![0; modulus.div_ceil(WORD)],
        }
    }

    pub fn full(modulus: usize) -> Self {
        let mut s = Self::empty(modulus);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    /// Builds a subset from residues that must already lie in `[0, modulus)`.
    pub fn from_residues<I>(modulus: usize, residues: I) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::empty(modulus);
        for r in residues {
            if r >= modulus {
                return Err(SetError::ResidueOutOfRange {
                    residue: r as i64,
                    modulus,
                });
            }
            s.insert(r);
        }
        Ok(s)
    }

    /// Reduces arbitrary integers into `[0, modulus)` (so `-1 mod 5 = 4`).
    pub fn from_integers<'a, I>(modulus: usize, values: I) -> Self
    where
        I: IntoIterator<Item = &'a i64>,
    {
        let mut s = Self::empty(modulus);
        for &v in values {
            s.insert(reduce(v, modulus));
        }
        s
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    #[inline]
    pub fn contains(&self, r: usize) -> bool {
        r < self.modulus && self.words[r / WORD] >> (r % WORD) & 1 == 1
    }

    /// Membership of an arbitrary integer's residue class.
    #[inline]
    pub fn contains_class(&self, n: i64) -> bool {
        self.contains(reduce(n, self.modulus))
    }

    #[inline]
    pub fn insert(&mut self, r: usize) {
        assert!(
            r < self.modulus,
            "residue {r} out of range for modulus {}",
            self.modulus
        );
        self.words[r / WORD] |= 1 << (r % WORD);
    }

    #[inline]
    pub fn remove(&mut self, r: usize) {
        if r < self.modulus {
            self.words[r / WORD] &= !(1 << (r % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.modulus
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * WORD + tz)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
        out
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_same(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    /// `{(r + shift) mod modulus : r in self}`.
    pub fn translate(&self, shift: i64) -> Self {
        let s = reduce(shift, self.modulus);
        let mut out = Self::empty(self.modulus);
        for r in self.iter() {
            let v = r + s;
            out.insert(if v >= self.modulus {
                v - self.modulus
            } else {
                v
            });
        }
        out
    }

    /// The residue sumset `(self + other) mod modulus`.
    pub fn sumset(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = Self::empty(self.modulus);
        for a in self.iter() {
            out.union_with(&other.translate(a as i64));
        }
        out
    }

    /// Image of this subset under reduction to a divisor of the modulus.
    pub fn reduce_to(&self, modulus: usize) -> Self {
        let mut out = Self::empty(modulus);
        for r in self.iter() {
            out.insert(r % modulus);
        }
        out
    }

    /// The lowest word, valid only when `modulus <= 64`.
    pub(crate) fn low_word(&self) -> u64 {
        self.words[0]
    }

    fn trim(&mut self) {
        let rem = self.modulus % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue subsets have different moduli"
        );
    }
}

/// `n mod modulus` normalized into `[0, modulus)`.
#[inline]
pub fn reduce(n: i64, modulus: usize) -> usize {
    n.rem_euclid(modulus as i64) as usize
}

impl fmt::Debug for ResidueSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.modulus, self.to_vec())
    }
}

impl fmt::Display for ResidueSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}} mod {}", self.modulus)
    }
}

#[derive(Serialize, Deserialize)]
struct ResidueSubsetRepr {
    modulus: usize,
    members: Vec<usize>,
}

impl Serialize for ResidueSubset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ResidueSubsetRepr {
            modulus: self.modulus,
            members: self.to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ResidueSubset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ResidueSubsetRepr::deserialize(deserializer)?;
        if repr.modulus == 0 {
            return Err(serde::de::Error::custom("modulus must be positive"));
        }
        ResidueSubset::from_residues(repr.modulus, repr.members).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn negative_values_wrap() {
        let s = ResidueSubset::from_integers(5, &[-1, 4, -3]);
        assert_eq!(s.to_vec(), vec![2, 4]);
        assert_eq!(reduce(-1, 10), 9);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            ResidueSubset::from_residues(5, [1, 5]),
            Err(SetError::ResidueOutOfRange {
                residue: 5,
                modulus: 5
            })
        ));
    }

    #[test]
    fn sumset_small() {
        let a = ResidueSubset::from_residues(5, [0, 1]).unwrap();
        let b = ResidueSubset::from_residues(5, [2, 3, 4]).unwrap();
        assert_eq!(a.sumset(&b).to_vec(), vec![0, 2, 3, 4]);
    }

    #[test]
    fn wide_moduli_cross_word_boundaries() {
        let s = ResidueSubset::from_residues(130, [0, 63, 64, 129]).unwrap();
        assert_eq!(s.translate(1).to_vec(), vec![0, 1, 64, 65]);
        assert_eq!(s.complement().len(), 126);
        assert!(ResidueSubset::full(130).is_full());
    }

    #[test]
    fn serde_rejects_bad_members() {
        let bad = r#"{"modulus":3,"members":[0,3]}"#;
        assert!(serde_json::from_str::<ResidueSubset>(bad).is_err());
        let good: ResidueSubset = serde_json::from_str(r#"{"modulus":3,"members":[2,0]}"#).unwrap();
        assert_eq!(good.to_vec(), vec![0, 2]);
    }

    proptest! {
        #[test]
        fn sumset_matches_pairwise(t in 1usize..80, a in proptest::collection::vec(0usize..80, 0..6),
                                   b in proptest::collection::vec(0usize..80, 0..6)) {
            let a = ResidueSubset::from_residues(t, a.into_iter().map(|v| v % t)).unwrap();
            let b = ResidueSubset::from_residues(t, b.into_iter().map(|v| v % t)).unwrap();
            let mut expect = vec![];
            for x in a.iter() { for y in b.iter() { expect.push((x + y) % t); } }
            expect.sort_unstable();
            expect.dedup();
            prop_assert_eq!(a.sumset(&b).to_vec(), expect);
        }
    }
}
