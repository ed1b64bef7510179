//! Finite-support coefficient vectors over the canonical basis.
//!
//! Entries map index -> nonzero coefficient; zero coefficients are never
//! stored, so the key set is exactly the support.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Bound;

use serde::{Deserialize, Serialize};

use crate::index::Index;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SparseVector {
    entries: BTreeMap<Index, f64>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from (index, coefficient) pairs, dropping zeros. Panics on
    /// index 0 or non-finite coefficients (programming errors, not inputs).
    pub fn from_entries<I: IntoIterator<Item = (Index, f64)>>(entries: I) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in entries {
            assert!(i >= 1, "sparse vector index must be >= 1");
            assert!(c.is_finite(), "sparse vector coefficient must be finite");
            if c != 0.0 {
                map.insert(i, c);
            }
        }
        Self { entries: map }
    }

    /// The unit vector e_n.
    pub fn unit(n: Index) -> Self {
        Self::from_entries([(n, 1.0)])
    }

    /// 1_A: indicator of a set with all-ones coefficients.
    pub fn indicator(a: &BTreeSet<Index>) -> Self {
        Self::from_entries(a.iter().map(|&i| (i, 1.0)))
    }

    /// 1_{eps,A}: signed indicator; `signs[k]` is the sign of the k-th
    /// smallest element of A.
    pub fn signed_indicator(a: &BTreeSet<Index>, signs: &[f64]) -> Self {
        assert_eq!(a.len(), signs.len());
        Self::from_entries(a.iter().zip(signs).map(|(&i, &s)| (i, s)))
    }

    pub fn get(&self, i: Index) -> f64 {
        self.entries.get(&i).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> BTreeSet<Index> {
        self.entries.keys().copied().collect()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Index, f64)> + '_ {
        self.entries.iter().map(|(&i, &c)| (i, c))
    }

    /// Entries with index in the inclusive range [lo, hi].
    pub fn iter_range(&self, lo: Index, hi: Index) -> impl Iterator<Item = (Index, f64)> + '_ {
        self.entries
            .range((Bound::Included(lo), Bound::Included(hi)))
            .map(|(&i, &c)| (i, c))
    }

    pub fn scale(&self, t: f64) -> Self {
        Self::from_entries(self.iter().map(|(i, c)| (i, t * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = self.entries.clone();
        for (i, c) in other.iter() {
            let v = map.entry(i).or_insert(0.0);
            *v += c;
            if *v == 0.0 {
                map.remove(&i);
            }
        }
        Self { entries: map }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Restriction to A (the projection P_A).
    pub fn restrict(&self, a: &BTreeSet<Index>) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| a.contains(i))
                .map(|(&i, &c)| (i, c))
                .collect(),
        }
    }

    /// Restriction to the inclusive index range [lo, hi].
    pub fn restrict_range(&self, lo: Index, hi: Index) -> Self {
        Self {
            entries: self.iter_range(lo, hi).collect(),
        }
    }

    /// max |coefficient| (0 for the zero vector).
    pub fn sup_norm(&self) -> f64 {
        self.entries.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// min |coefficient| over A, treating indices outside the support as 0.
    pub fn min_abs_over(&self, a: &BTreeSet<Index>) -> f64 {
        a.iter().map(|&i| self.get(i).abs()).fold(f64::INFINITY, f64::min)
    }

    /// Support sorted by (|coefficient| descending, index ascending).
    pub fn support_by_magnitude(&self) -> Vec<(Index, f64)> {
        let mut v: Vec<(Index, f64)> = self.iter().collect();
        v.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap().then(a.0.cmp(&b.0)));
        v
    }
}
