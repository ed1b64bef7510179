//! Witness-certified lower bounds for Lebesgue-type and democracy-type
//! parameters, with re-evaluation from the stored witness.
//!
//! Run with: cargo run --example parameter_estimates

use greedylab::params::{
    check_property_a, democracy_profile, estimate_parameter, reevaluate, ParamKind, SearchBudget,
};
use greedylab::presets::{build_example_72, build_xp};
use greedylab::weights::Weight;
use greedylab::Index;

fn main() {
    let space = build_xp(2.0, Weight::FormulaW1).unwrap();
    let pool: Vec<Index> = (1..=12).collect();
    let budget = SearchBudget { candidates: 60 };

    println!("lower bounds on {} at m = 2, t = 1:", space.name);
    for kind_name in ["g_bar", "g_hat", "L", "L_a", "trunc_qg", "squeeze", "succ"] {
        let kind = ParamKind::parse(kind_name).unwrap();
        let est = estimate_parameter(&space.spec, kind, 2, 1.0, &budget, &pool, 0).unwrap();
        // Every estimate carries a witness that reproduces its value.
        let re = reevaluate(&space.spec, kind, est.m, est.t_or_s, &est.witnesses[0]).unwrap();
        println!(
            "  {kind_name:>8} >= {:.8}   (witness re-evaluates to {:.8}; {})",
            est.lower_bound, re, est.note
        );
    }

    // Democracy profile: how indicator norms spread across w-measure levels.
    println!("superdemocracy profile of the conditional space:");
    let ex = build_example_72();
    let rows = democracy_profile(&ex.spec, &ex.weight, &[1.0, 2.0, 4.0], &pool, true, 0).unwrap();
    for r in rows {
        println!(
            "  target w = {:>3}: max ‖1_A‖ below = {:.6}, min above = {:.6}, ratio >= {:.6}",
            r.target_w, r.max_below, r.min_above, r.ratio
        );
    }

    // The disjoint-swap property constant has its own search.
    let pa = check_property_a(&space.spec, &space.weight, &pool, &budget, 0).unwrap();
    println!("disjoint-swap property constant >= {:.8}", pa.lower_bound);
}
