//! Property-based tests: norm axioms, structural identities, estimator
//! orderings, and approximation-error monotonicity on randomly generated
//! sparse vectors and norm shapes.

use std::collections::BTreeSet;

use proptest::prelude::*;

use greedylab::approx::{sigma_m, weighted_projection_error, weighted_sigma};
use greedylab::norms::NormSpec;
use greedylab::presets::{build_example_72, build_xp};
use greedylab::rules::CoefficientRule;
use greedylab::sparse::SparseVector;
use greedylab::weights::Weight;
use greedylab::Index;

/// A sparse vector with support in {1..30} and coefficients in [-4, 4].
fn sparse_vector() -> impl Strategy<Value = SparseVector> {
    proptest::collection::btree_map(1u64..=30, -4.0f64..4.0, 1..=8).prop_map(|m| {
        SparseVector::from_entries(
            m.into_iter().filter(|(_, v)| v.abs() > 1e-9).map(|(i, v)| (i as Index, v)),
        )
    })
}

/// A norm specification drawn from all node kinds.
fn norm_spec() -> impl Strategy<Value = NormSpec> {
    prop_oneof![
        Just(NormSpec::SupNorm),
        (1.0f64..4.0).prop_map(|p| NormSpec::WeightedLp { p: 1.0 + p, weight: Weight::FormulaW1 }),
        Just(NormSpec::Prefix { rule: CoefficientRule::InvPow34 }),
        Just(NormSpec::MaxOf(vec![
            NormSpec::SupNorm,
            NormSpec::WeightedLp { p: 2.0, weight: Weight::Constant(1.0) },
        ])),
        Just(NormSpec::Interleave {
            left: Box::new(NormSpec::SupNorm),
            right: Box::new(NormSpec::Prefix { rule: CoefficientRule::InvPow34 }),
        }),
        Just(NormSpec::SchauderMajorant {
            inner: Box::new(NormSpec::Prefix { rule: CoefficientRule::InvPow34 }),
        }),
        Just(NormSpec::MaxOf(vec![
            NormSpec::SupNorm,
            NormSpec::Intervals { intervals: vec![(2, 6), (9, 14)], rule: CoefficientRule::InvPow34 },
        ])),
    ]
}

proptest! {
    /// Absolute homogeneity: ‖c x‖ = |c| ‖x‖ to 1e-12 relative.
    #[test]
    fn norm_is_homogeneous(spec in norm_spec(), x in sparse_vector(), c in -3.0f64..3.0) {
        prop_assume!(c.abs() > 1e-6);
        let lhs = spec.eval(&x.scale(c));
        let rhs = c.abs() * spec.eval(&x);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "{lhs} vs {rhs}");
    }

    /// Triangle inequality: ‖x + y‖ <= ‖x‖ + ‖y‖ + 1e-12.
    #[test]
    fn norm_satisfies_triangle_inequality(
        spec in norm_spec(),
        x in sparse_vector(),
        y in sparse_vector(),
    ) {
        let lhs = spec.eval(&x.add(&y));
        let rhs = spec.eval(&x) + spec.eval(&y);
        prop_assert!(lhs <= rhs + 1e-12 * rhs.max(1.0), "{lhs} > {rhs}");
    }

    /// A max-of node dominates each of its children exactly.
    #[test]
    fn max_of_dominates_children(x in sparse_vector()) {
        let children = vec![
            NormSpec::SupNorm,
            NormSpec::WeightedLp { p: 2.0, weight: Weight::FormulaW1 },
            NormSpec::Prefix { rule: CoefficientRule::InvPow34 },
        ];
        let m = NormSpec::MaxOf(children.clone());
        let v = m.eval(&x);
        for c in &children {
            prop_assert!(v >= c.eval(&x));
        }
        prop_assert!(children.iter().any(|c| c.eval(&x) == v));
    }

    /// The windowed majorant dominates the inner norm and keeps unit vectors.
    #[test]
    fn majorant_dominates_inner(x in sparse_vector()) {
        let inner = NormSpec::Prefix { rule: CoefficientRule::InvPow34 };
        let outer = NormSpec::SchauderMajorant { inner: Box::new(inner.clone()) };
        prop_assert!(outer.eval(&x) >= inner.eval(&x) - 1e-15);
    }

    /// The natural greedy set is a valid greedy set, and every enumerated
    /// greedy set passes the membership test.
    #[test]
    fn greedy_sets_are_consistent(x in sparse_vector(), m in 0usize..6, t in 0.3f64..1.0) {
        let m = m.min(x.support_len());
        let a = greedylab::greedy::natural_greedy_set(&x, m);
        prop_assert!(greedylab::greedy::is_greedy_set(&x, &a, t));
        for b in greedylab::greedy::enumerate_greedy_sets(&x, m, t).unwrap() {
            prop_assert!(greedylab::greedy::is_greedy_set(&x, &b, t));
        }
    }

    /// Projections never increase the norm of the unconditional max space,
    /// and the conditional space keeps the factor-6 quasi-greedy bound on
    /// greedy projections.
    #[test]
    fn projection_bounds(x in sparse_vector(), m in 1usize..6) {
        let m = m.min(x.support_len());
        let a = greedylab::greedy::natural_greedy_set(&x, m);
        let p = x.restrict(&a);
        let xp = build_xp(2.0, Weight::FormulaW1).unwrap().spec;
        prop_assert!(xp.eval(&p) <= xp.eval(&x) + 1e-12);
        let ex = build_example_72().spec;
        prop_assert!(ex.eval(&p) <= 6.0 * ex.eval(&x) + 1e-9);
    }

    /// JSON round-trip of a norm specification is lossless.
    #[test]
    fn norm_spec_json_round_trip(spec in norm_spec()) {
        let v = greedylab::json::norm_to_json(&spec);
        let back = greedylab::json::norm_from_json(&v).unwrap();
        prop_assert_eq!(spec, back);
    }

    /// Vector JSON round-trip reproduces every coefficient bit-exactly.
    #[test]
    fn vector_json_round_trip(x in sparse_vector()) {
        let v = greedylab::json::vector_to_value(&x);
        let back = greedylab::json::vector_from_value(&v).unwrap();
        let same = x.support() == back.support()
            && x.support().iter().all(|&i| x.get(i) == back.get(i));
        prop_assert!(same);
    }

    /// Restricting to disjoint sets and adding reconstructs the vector.
    #[test]
    fn restrict_partitions_vector(x in sparse_vector()) {
        let supp: Vec<Index> = x.support().into_iter().collect();
        let (evens, odds): (Vec<_>, Vec<_>) = supp.iter().partition(|i| *i % 2 == 0);
        let a: BTreeSet<Index> = evens.into_iter().copied().collect();
        let b: BTreeSet<Index> = odds.into_iter().copied().collect();
        let back = x.restrict(&a).add(&x.restrict(&b));
        prop_assert!(x.sub(&back).is_zero());
    }
}

/// A very small vector for the expensive sigma properties: every sigma call
/// runs one Chebyshev solve per candidate support.
fn tiny_vector() -> impl Strategy<Value = SparseVector> {
    proptest::collection::btree_map(1u64..=12, -4.0f64..4.0, 1..=4).prop_map(|m| {
        SparseVector::from_entries(
            m.into_iter().filter(|(_, v)| v.abs() > 1e-3).map(|(i, v)| (i as Index, v)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// sigma_m decreases in m, and the weighted variants are ordered:
    /// sigma over sets of weight <= W shrinks as W grows, and beats the
    /// best weight-budgeted projection.
    #[test]
    fn approximation_errors_are_monotone(x in tiny_vector()) {
        prop_assume!(!x.is_zero());
        let spec = build_xp(2.0, Weight::FormulaW1).unwrap().spec;
        let pool: BTreeSet<Index> = x.support().into_iter().chain([13]).collect();
        let mut prev = f64::INFINITY;
        for m in 0..=x.support_len().min(2) {
            let s = sigma_m(&spec, &x, m, &pool).unwrap();
            prop_assert!(s <= prev + 1e-12, "sigma not monotone at m={m}");
            prev = s;
        }
        let w = Weight::FormulaW1;
        let s1 = weighted_sigma(&spec, &x, &w, 1.0, &pool).unwrap();
        let s2 = weighted_sigma(&spec, &x, &w, 3.0, &pool).unwrap();
        prop_assert!(s2 <= s1 + 1e-12);
        let p1 = weighted_projection_error(&spec, &x, &w, 1.0).unwrap();
        prop_assert!(s1 <= p1 + 1e-12, "best approximation beats projection");
    }
}
