//! Chebyshev (best-coefficient) approximation on a fixed support, with a
//! certified optimality gap, compared against the plain greedy projection.
//!
//! Run with: cargo run --example chebyshev_approximation

use std::collections::BTreeSet;

use greedylab::cheb::{chebyshev_best, chebyshev_best_with, ChebBudget};
use greedylab::greedy::natural_greedy_set;
use greedylab::presets::build_example_72;
use greedylab::sparse::SparseVector;

fn main() {
    let spec = build_example_72().spec;
    let x = SparseVector::from_entries([
        (1, 1.0),
        (2, -0.9),
        (3, 0.8),
        (5, 0.4),
        (8, -0.3),
        (13, 0.2),
    ]);
    let a = natural_greedy_set(&x, 3);

    // The projection keeps the coefficients of x on A as they are.
    let proj_err = spec.eval(&x.sub(&x.restrict(&a)));

    // Chebyshev approximation re-optimizes the coefficients on A.
    let r = chebyshev_best(&spec, &x, &a).unwrap();
    println!("support A = {:?}", a.iter().collect::<Vec<_>>());
    println!("projection error   : {proj_err:.10}");
    println!("chebyshev error    : {:.10}", r.error);
    println!("certified gap      : {:.2e}  ({:?}, converged = {})", r.gap, r.method, r.converged);
    println!("optimal coefficients on A:");
    for (i, v) in r.y.iter() {
        println!("  y_{i} = {v:+.10}   (x_{i} = {:+.10})", x.get(i));
    }

    // A lean budget trades gap certification for speed; the error stays a
    // valid upper bound (never worse than the projection).
    let lean = ChebBudget { nodes_small: 500, nodes_large: 100 };
    let big_a: BTreeSet<_> = [1u128, 2, 3, 5, 8, 13].into_iter().collect();
    let r2 = chebyshev_best_with(&spec, &x, &big_a, &lean).unwrap();
    println!(
        "lean run on |A| = {}: error {:.6}, gap {:.3e}, converged = {}",
        big_a.len(),
        r2.error,
        r2.gap,
        r2.converged
    );
}
