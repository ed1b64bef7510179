//! Build weighted sequence-space norms and evaluate them on finite-support
//! vectors.
//!
//! Run with: cargo run --example norm_evaluation

use std::collections::BTreeSet;

use greedylab::norms::NormSpec;
use greedylab::presets::{build_example_72, build_xp, preset_by_name};
use greedylab::rules::CoefficientRule;
use greedylab::sparse::SparseVector;
use greedylab::weights::Weight;
use greedylab::Index;

fn main() {
    // The max{sup, weighted-l2} space with the n^{-1/2} ln(n+1) weight.
    let xp = build_xp(2.0, Weight::FormulaW1).unwrap();
    let x = SparseVector::from_entries([(1, 1.0), (2, -0.5), (10, 0.25)]);
    println!("space {:>5}:  ‖x‖ = {:.12}", xp.name, xp.spec.eval(&x));

    // Indicator norms are exactly max{1, w(A)^{1/2}} in this space.
    let a: BTreeSet<Index> = (1..=6).collect();
    let wa = xp.weight.weight_measure(&a).unwrap();
    let ind = SparseVector::indicator(&a);
    println!(
        "indicator on {{1..6}}: ‖1_A‖ = {:.12}, max{{1, sqrt(w(A))}} = {:.12}",
        xp.spec.eval(&ind),
        wa.sqrt().max(1.0)
    );

    // The conditional space adds a prefix functional; signs now matter.
    let ex = build_example_72();
    let signs_plus = vec![1.0; 6];
    let signs_alt: Vec<f64> = (0..6).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
    println!(
        "conditional space: ‖1_A‖ = {:.6}, alternating signs = {:.6}",
        ex.spec.eval(&SparseVector::signed_indicator(&a, &signs_plus)),
        ex.spec.eval(&SparseVector::signed_indicator(&a, &signs_alt))
    );

    // Norms compose: max-of, interleaving, windowed majorant.
    let composite = NormSpec::Interleave {
        left: Box::new(xp.spec.clone()),
        right: Box::new(NormSpec::SchauderMajorant {
            inner: Box::new(NormSpec::Prefix { rule: CoefficientRule::InvPow34 }),
        }),
    };
    println!("interleaved composite: ‖x‖ = {:.12}", composite.eval(&x));

    // Presets are addressable by name (the same names the CLI accepts).
    for name in ["xp", "ex72", "ex74", "ex76", "sum"] {
        let p = preset_by_name(name).unwrap();
        println!("preset {:>5}: ‖e_1 + e_2‖ = {:.12}", name, p.spec.eval(&SparseVector::from_entries([(1, 1.0), (2, 1.0)])));
    }
}
