//! The conditional quasi-greedy space: greedy projections stay bounded
//! while the basis conditionality ratio grows without bound.
//!
//! Run with: cargo run --example conditionality_growth

use greedylab::greedy::{enumerate_greedy_sets, natural_greedy_set};
use greedylab::presets::{build_example_72, example72_conditionality_ratio, example72_witnesses};

fn main() {
    let space = build_example_72();

    // Quasi-greediness: ‖P_A(x)‖ <= 6 ‖x‖ on greedy sets A.
    let x = greedylab::sparse::SparseVector::from_entries(
        (1..=10u128).map(|i| (i, if i % 2 == 0 { -1.0 } else { 1.0 } / (i as f64).sqrt())),
    );
    let norm_x = space.spec.eval(&x);
    println!("‖x‖ = {norm_x:.6}; greedy projection norms (bound 6 ‖x‖ = {:.6}):", 6.0 * norm_x);
    for m in [1usize, 3, 5, 8] {
        let mut worst = 0.0f64;
        for a in enumerate_greedy_sets(&x, m, 1.0).unwrap() {
            worst = worst.max(space.spec.eval(&x.restrict(&a)));
        }
        println!("  m = {m}: max ‖P_A(x)‖ over greedy A = {worst:.6}");
    }
    let _ = natural_greedy_set(&x, 3);

    // Conditionality: the witness pair (y_m, z_m) differs only in signs yet
    // ‖y_m‖ / ‖z_m‖ grows like a power of ln m.
    println!("conditionality ratio r(m) = ‖y_m‖ / ‖z_m‖:");
    for m in [100u128, 10_000, 1_000_000] {
        let (y, z) = example72_witnesses(m);
        let r = example72_conditionality_ratio(m);
        println!(
            "  m = {m:>7}: ‖y‖ = {:.4}, ‖z‖ = {:.4}, ratio = {r:.4}",
            space.spec.eval(&y),
            space.spec.eval(&z)
        );
    }
}
