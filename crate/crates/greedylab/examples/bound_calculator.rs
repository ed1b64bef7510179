//! The closed-form bound calculator: evaluate every published constant
//! bound on a chosen set of primitive inputs.
//!
//! Run with: cargo run --example bound_calculator

use std::collections::BTreeMap;

use greedylab::bounds::{bound_calculator, FORMULA_TAGS};

fn main() {
    // Primitive inputs: unconditionality-type constants, the truncation
    // constant, weight infimum, and Lebesgue-type values at several scales.
    let inputs: BTreeMap<String, f64> = [
        ("c", 1.2),
        ("m_fs", 1.1),
        ("s", 0.9),
        ("t", 0.8),
        ("lambda", 1.3),
        ("lambda_prime", 1.4),
        ("kappa", 1.1),
        ("inf_w_inv", 2.0),
        ("k", 2.5),
        ("l", 1.6),
        ("l_m", 1.8),
        ("l_2m", 2.1),
        ("l_m1", 1.9),
        ("l_2", 1.4),
        ("p_m", 1.7),
        ("c1", 2.0),
        ("c2", 1.5),
        ("c3", 1.8),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();

    println!("{:<12} value", "bound");
    for &tag in FORMULA_TAGS {
        let v = bound_calculator(tag, &inputs).unwrap();
        println!("{tag:<12} {v:.6}");
    }

    // Missing inputs are contract errors, not silent defaults.
    let err = bound_calculator("thm53_K", &BTreeMap::new()).unwrap_err();
    println!("missing-input error: {err}");
}
