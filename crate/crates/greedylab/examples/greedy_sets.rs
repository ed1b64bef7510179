//! Thresholding greedy sets: the natural greedy set, enumeration of all
//! t-greedy sets under ties, and greedy supersets.
//!
//! Run with: cargo run --example greedy_sets

use greedylab::greedy::{enumerate_greedy_sets, greedy_superset_s2, is_greedy_set, natural_greedy_set};
use greedylab::report::set_to_string;
use greedylab::sparse::SparseVector;

fn main() {
    // Ties make greedy sets non-unique: three coefficients share |x_i| = 1.
    let x = SparseVector::from_entries([(1, 2.0), (2, 1.0), (3, -1.0), (4, 1.0), (5, 0.5)]);

    let g2 = natural_greedy_set(&x, 2);
    println!("natural greedy set of size 2: {}", set_to_string(&g2));

    for t in [1.0, 0.5] {
        let sets = enumerate_greedy_sets(&x, 2, t).unwrap();
        println!("all {t}-greedy sets of size 2 ({} total):", sets.len());
        for a in &sets {
            println!("  {}  (membership check: {})", set_to_string(a), is_greedy_set(&x, a, t));
        }
    }

    // An s-greedy superset of an arbitrary set A whose coefficients stay
    // above s^2 times the smallest on A, used when transferring bounds
    // between parameters. s must lie in (0, 1].
    let a = [2u128, 5].into_iter().collect();
    let sup = greedy_superset_s2(&x, &a, 0.8, |_| true).unwrap();
    println!("0.8-greedy superset of {}: {}", set_to_string(&a), set_to_string(&sup));
}
