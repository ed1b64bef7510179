//! Composable norm specifications and their exact evaluation on sparse
//! vectors.
//!
//! A `NormSpec` is a small AST. Leaves are the weighted lp norm, the sup
//! norm, and two functional-sup norms (prefix sums and interval sums with a
//! registered coefficient rule). Interior nodes take maxima, interleave two
//! spaces, or majorize over all interval restrictions (which turns any norm
//! into one with a monotone Schauder basis).
//!
//! Every evaluation is exact on finite supports: prefix sups are attained at
//! support indices because partial sums are constant between support points,
//! and the interval-restriction sup reduces to the O(k^2) windows delimited
//! by the k support points.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::Index;
use crate::rules::CoefficientRule;
use crate::sparse::SparseVector;
use crate::weights::Weight;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum NormSpec {
    /// (sum_n w_n |a_n|^p)^{1/p}, p in [1, infinity).
    WeightedLp { p: f64, weight: Weight },
    /// max_n |a_n|.
    SupNorm,
    /// sup_m |sum_{n<=m} c_n a_n|.
    Prefix { rule: CoefficientRule },
    /// sup_m |sum_{n in A_m} c_n a_n| over listed disjoint intervals.
    Intervals {
        intervals: Vec<(Index, Index)>,
        rule: CoefficientRule,
    },
    /// Pointwise maximum of child norms.
    MaxOf(Vec<NormSpec>),
    /// Odd indices 2n-1 feed the left space at n, even 2n feed the right at
    /// n; value is the max of the two component norms.
    Interleave { left: Box<NormSpec>, right: Box<NormSpec> },
    /// sup over integer windows [k, m] of the inner norm of the restriction.
    SchauderMajorant { inner: Box<NormSpec> },
}

impl NormSpec {
    /// Validates structural constraints (p range, interval ordering).
    pub fn validate(&self) -> Result<()> {
        match self {
            NormSpec::WeightedLp { p, weight } => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(Error::Contract(format!("WeightedLp requires p >= 1, got {p}")));
                }
                weight.validate()
            }
            NormSpec::SupNorm | NormSpec::Prefix { .. } => Ok(()),
            NormSpec::Intervals { intervals, .. } => {
                let mut prev_end: Option<Index> = None;
                for &(lo, hi) in intervals {
                    if lo < 1 || lo > hi {
                        return Err(Error::Contract(format!("bad interval [{lo}, {hi}]")));
                    }
                    if let Some(pe) = prev_end {
                        if lo <= pe {
                            return Err(Error::Contract(
                                "intervals must be strictly increasing and disjoint".into(),
                            ));
                        }
                    }
                    prev_end = Some(hi);
                }
                Ok(())
            }
            NormSpec::MaxOf(children) => {
                if children.is_empty() {
                    return Err(Error::Contract("MaxOf needs at least one child".into()));
                }
                children.iter().try_for_each(|c| c.validate())
            }
            NormSpec::Interleave { left, right } => {
                left.validate()?;
                right.validate()
            }
            NormSpec::SchauderMajorant { inner } => inner.validate(),
        }
    }

    /// Exact norm of a finite-support vector.
    pub fn eval(&self, x: &SparseVector) -> f64 {
        match self {
            NormSpec::WeightedLp { p, weight } => {
                let mut s = 0.0;
                for (i, c) in x.iter() {
                    s += weight.weight_at(i).expect("index >= 1 by invariant") * c.abs().powf(*p);
                }
                s.powf(1.0 / p)
            }
            NormSpec::SupNorm => x.sup_norm(),
            NormSpec::Prefix { rule } => {
                // Partial sums only change at support points, so the sup is
                // the max |partial sum| over prefixes ending at support
                // indices (and 0 for the empty prefix).
                let mut best = 0.0f64;
                let mut partial = 0.0;
                for (i, c) in x.iter() {
                    partial += rule.eval(i) * c;
                    best = best.max(partial.abs());
                }
                best
            }
            NormSpec::Intervals { intervals, rule } => {
                let mut best = 0.0f64;
                for &(lo, hi) in intervals {
                    let s: f64 = x.iter_range(lo, hi).map(|(i, c)| rule.eval(i) * c).sum();
                    best = best.max(s.abs());
                }
                best
            }
            NormSpec::MaxOf(children) => {
                children.iter().map(|c| c.eval(x)).fold(0.0, f64::max)
            }
            NormSpec::Interleave { left, right } => {
                let mut l = Vec::new();
                let mut r = Vec::new();
                for (i, c) in x.iter() {
                    if i % 2 == 1 {
                        l.push(((i + 1) / 2, c));
                    } else {
                        r.push((i / 2, c));
                    }
                }
                let lx = SparseVector::from_entries(l);
                let rx = SparseVector::from_entries(r);
                left.eval(&lx).max(right.eval(&rx))
            }
            NormSpec::SchauderMajorant { inner } => {
                let supp: Vec<Index> = x.support().into_iter().collect();
                let k = supp.len();
                let mut best = 0.0f64;
                for i in 0..k {
                    for j in i..k {
                        let window = x.restrict_range(supp[i], supp[j]);
                        best = best.max(inner.eval(&window));
                    }
                }
                best
            }
        }
    }

    /// A per-coordinate Lipschitz constant: |‖x + d e_a‖ - ‖x‖| <= |d| * L_a
    /// with L_a = ‖e_a‖ by the triangle inequality.
    pub fn unit_norm(&self, a: Index) -> f64 {
        self.eval(&SparseVector::unit(a))
    }

    /// A coordinate coercivity constant: a gamma_a >= 0 with
    /// gamma_a * |z_a| <= ‖z‖ for every z. Used to bound the search box of
    /// the Chebyshev solver. May legitimately be 0 (e.g. a coordinate seen
    /// only through interval sums, where other coordinates can cancel it).
    pub fn coord_lower(&self, a: Index) -> f64 {
        match self {
            NormSpec::WeightedLp { p, weight } => {
                weight.weight_at(a).expect("index >= 1").powf(1.0 / p)
            }
            NormSpec::SupNorm => 1.0,
            // |c_a z_a| = |prefix_a - prefix_{a-1}| <= 2 sup.
            NormSpec::Prefix { rule } => rule.eval(a) / 2.0,
            NormSpec::Intervals { .. } => 0.0,
            NormSpec::MaxOf(children) => {
                children.iter().map(|c| c.coord_lower(a)).fold(0.0, f64::max)
            }
            NormSpec::Interleave { left, right } => {
                if a % 2 == 1 {
                    left.coord_lower((a + 1) / 2)
                } else {
                    right.coord_lower(a / 2)
                }
            }
            // The window [a, a] exposes the coordinate alone:
            // ‖z‖_Y >= ‖z_a e_a‖_inner = |z_a| ‖e_a‖_inner.
            NormSpec::SchauderMajorant { inner } => inner.unit_norm(a),
        }
    }

    /// Whether the norm reads the coordinate at all. Coordinates never read
    /// are fixed to their projection value by the Chebyshev solver.
    pub fn reads_coordinate(&self, a: Index) -> bool {
        match self {
            NormSpec::WeightedLp { .. } | NormSpec::SupNorm => true,
            NormSpec::Prefix { rule } => rule.eval(a) != 0.0,
            NormSpec::Intervals { intervals, rule } => {
                rule.eval(a) != 0.0 && intervals.iter().any(|&(lo, hi)| lo <= a && a <= hi)
            }
            NormSpec::MaxOf(children) => children.iter().any(|c| c.reads_coordinate(a)),
            NormSpec::Interleave { left, right } => {
                if a % 2 == 1 {
                    left.reads_coordinate((a + 1) / 2)
                } else {
                    right.reads_coordinate(a / 2)
                }
            }
            NormSpec::SchauderMajorant { inner } => inner.reads_coordinate(a),
        }
    }
}

/// The basis constants of a normalized-or-not basis at finite truncation:
/// lambda = max ‖e_i‖, lambda' = max ‖e_i^*‖, lambda'' = max ‖e_i‖‖e_i^*‖,
/// kappa = 1 for real scalars.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisConstants {
    pub lambda: f64,
    pub lambda_prime: f64,
    pub lambda_double_prime: f64,
    pub kappa: f64,
}

impl BasisConstants {
    pub fn new(lambda: f64, lambda_prime: f64, lambda_double_prime: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda_prime > 0.0 && lambda_double_prime > 0.0) {
            return Err(Error::Contract("basis constants must be positive".into()));
        }
        if lambda_double_prime > lambda * lambda_prime * (1.0 + 1e-12) {
            return Err(Error::Contract(
                "lambda'' must not exceed lambda * lambda'".into(),
            ));
        }
        Ok(Self { lambda, lambda_prime, lambda_double_prime, kappa: 1.0 })
    }
}

/// Convenience: the set {a..=b} (small ranges only).
pub fn range_set(a: Index, b: Index) -> BTreeSet<Index> {
    (a..=b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x532() -> SparseVector {
        SparseVector::from_entries([(1, 3.0), (2, -5.0), (3, 2.0)])
    }

    #[test]
    fn sup_norm_example() {
        assert_eq!(NormSpec::SupNorm.eval(&x532()), 5.0);
    }

    #[test]
    fn xp_indicator_norm_is_sqrt_measure() {
        // max{1, w(A)^{1/2}} with w = 1 on 4 indices -> 2.
        let spec = NormSpec::MaxOf(vec![
            NormSpec::SupNorm,
            NormSpec::WeightedLp { p: 2.0, weight: Weight::Constant(1.0) },
        ]);
        let x = SparseVector::indicator(&range_set(1, 4));
        assert_eq!(spec.eval(&x), 2.0);
    }

    #[test]
    fn prefix_functional_two_terms() {
        // e_1 - e_2 under c_n = n^{-3/4}: prefixes 1 and 1 - 2^{-3/4}.
        let spec = NormSpec::Prefix { rule: CoefficientRule::InvPow34 };
        let x = SparseVector::from_entries([(1, 1.0), (2, -1.0)]);
        let v = spec.eval(&x);
        assert!((v - 1.0).abs() < 1e-15, "{v}");
    }

    #[test]
    fn interval_functional_only_reads_listed_intervals() {
        let spec = NormSpec::Intervals {
            intervals: vec![(2, 4), (10, 20)],
            rule: CoefficientRule::InvPow34,
        };
        let x = SparseVector::from_entries([(1, 100.0), (3, 1.0), (12, -2.0)]);
        let expect = (3f64.powf(-0.75)).max(2.0 * 12f64.powf(-0.75));
        assert!((spec.eval(&x) - expect).abs() < 1e-15);
    }

    #[test]
    fn interleave_routes_parities() {
        // Odd index 1 -> left coordinate 1; even index 2 -> right coordinate 1.
        let spec = NormSpec::Interleave {
            left: Box::new(NormSpec::WeightedLp { p: 1.0, weight: Weight::Constant(1.0) }),
            right: Box::new(NormSpec::SupNorm),
        };
        let x = SparseVector::from_entries([(1, 1.0), (3, 1.0), (2, 5.0)]);
        // left sees (1,1) -> l1 norm 2; right sees (5) -> sup 5.
        assert_eq!(spec.eval(&x), 5.0);
    }

    #[test]
    fn schauder_majorant_dominates_inner() {
        let inner = NormSpec::Prefix { rule: CoefficientRule::InvPow34 };
        let spec = NormSpec::SchauderMajorant { inner: Box::new(inner.clone()) };
        let x = SparseVector::from_entries([(1, 1.0), (2, -1.0), (5, 0.5)]);
        assert!(spec.eval(&x) >= inner.eval(&x) - 1e-15);
        // The window {2} alone gives 2^{-3/4} which the plain prefix norm
        // cannot isolate.
        assert!(spec.eval(&x) >= 2f64.powf(-0.75) - 1e-15);
    }

    #[test]
    fn zero_vector_has_zero_norm() {
        let spec = NormSpec::MaxOf(vec![
            NormSpec::SupNorm,
            NormSpec::Prefix { rule: CoefficientRule::InvPow34 },
        ]);
        assert_eq!(spec.eval(&SparseVector::zero()), 0.0);
    }

    #[test]
    fn coord_lower_is_coercive_on_samples() {
        let spec = NormSpec::MaxOf(vec![
            NormSpec::Prefix { rule: CoefficientRule::InvPow34 },
            NormSpec::WeightedLp { p: 2.0, weight: Weight::FormulaW1 },
        ]);
        for a in [1u128, 2, 3, 7] {
            let g = spec.coord_lower(a);
            assert!(g > 0.0);
            let z = SparseVector::from_entries([(a, 2.0), (a + 1, -1.0)]);
            assert!(g * z.get(a).abs() <= spec.eval(&z) + 1e-12);
        }
    }
}
