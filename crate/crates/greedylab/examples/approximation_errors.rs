//! Best m-term approximation errors: plain sigma_m over a pool, the
//! projectional variant, and weight-budgeted versions, plus a dual-norm
//! lower bound.
//!
//! Run with: cargo run --example approximation_errors

use std::collections::BTreeSet;

use greedylab::approx::{sigma_m, sigma_tilde_m, weighted_projection_error, weighted_sigma};
use greedylab::dual::dual_norm_eval;
use greedylab::presets::build_xp;
use greedylab::sparse::SparseVector;
use greedylab::weights::Weight;
use greedylab::Index;

fn main() {
    let space = build_xp(2.0, Weight::FormulaW1).unwrap();
    let x = SparseVector::from_entries((1..=5u128).map(|i| (i, 1.0 / i as f64)));
    let pool: BTreeSet<Index> = (1..=6).collect();

    println!("x has support {{1..5}}, x_i = 1/i; pool {{1..6}}");
    println!("‖x‖ = {:.10}", space.spec.eval(&x));
    println!(" m | sigma_m (free coefficients) | sigma~_m (projections)");
    for m in 0..=3 {
        let s = sigma_m(&space.spec, &x, m, &pool).unwrap();
        let st = sigma_tilde_m(&space.spec, &x, m).unwrap();
        println!("{m:>2} | {s:>27.10} | {st:.10}");
    }

    // Weighted versions budget the w-measure of the support instead of its
    // cardinality.
    println!(" W | weighted sigma | weighted projection error");
    for wbudget in [0.5, 1.0, 2.0] {
        let s = weighted_sigma(&space.spec, &x, &space.weight, wbudget, &pool).unwrap();
        let p = weighted_projection_error(&space.spec, &x, &space.weight, wbudget).unwrap();
        println!("{wbudget:>4} | {s:>14.10} | {p:.10}");
    }

    // Dual norm of a functional on the first 16 coordinates; the value is a
    // certified lower bound obtained from a vertex search.
    let c = SparseVector::from_entries([(1, 1.0), (2, 1.0), (3, -1.0)]);
    let d = dual_norm_eval(&space.spec, &c, 16).unwrap();
    println!("dual norm of e*_1 + e*_2 - e*_3 (dim 16): {:.10} (converged = {})", d.value, d.converged);
}
