//! Numerical dual-norm evaluation at finite truncation.
//!
//! ‖c‖* = sup { c . a : ‖a‖ <= 1, supp(a) <= [1, N] } is a concave
//! maximization; we exploit scale invariance and maximize the ratio
//! g(a) = c . a / ‖a‖ over directions. Every evaluated point yields a
//! feasible certificate (a / ‖a‖), so the returned value is always a valid
//! lower bound; a convergence flag reports whether refinement stagnated
//! below tolerance. For N <= 3 an exhaustive grid refinement over the unit
//! cube's surface serves as the oracle.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index::Index;
use crate::norms::NormSpec;
use crate::sparse::SparseVector;

/// Result of a dual-norm evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualResult {
    /// Best value found; always a valid lower bound on the dual norm.
    pub value: f64,
    /// Whether the search stagnated below the relative tolerance.
    pub converged: bool,
}

pub const DUAL_MAX_DIM: usize = 64;
pub const DUAL_REL_TOL: f64 = 1e-4;

/// Evaluates the dual norm of the functional with coefficients `c` on the
/// truncation to indices 1..=N.
pub fn dual_norm_eval(spec: &NormSpec, c: &SparseVector, n_dim: usize) -> Result<DualResult> {
    if n_dim == 0 || n_dim > DUAL_MAX_DIM {
        return Err(Error::Contract(format!(
            "truncation dimension must be in 1..={DUAL_MAX_DIM}, got {n_dim}"
        )));
    }
    if let Some(&max) = c.support().iter().next_back() {
        if max > n_dim as Index {
            return Err(Error::Contract(format!(
                "supp(c) must lie in [1, {n_dim}], found index {max}"
            )));
        }
    }
    if c.is_zero() {
        return Ok(DualResult { value: 0.0, converged: true });
    }

    let cv: Vec<f64> = (1..=n_dim as Index).map(|i| c.get(i)).collect();
    let mut best = ascent(spec, &cv, 0xD0A1);
    if n_dim <= 3 {
        let grid = grid_refine(spec, &cv);
        if grid.value > best.value {
            best = grid;
        }
        best.converged = true;
    }
    Ok(best)
}

fn ratio(spec: &NormSpec, c: &[f64], a: &[f64]) -> f64 {
    let x = SparseVector::from_entries(
        a.iter().enumerate().map(|(k, &v)| ((k + 1) as Index, v)),
    );
    let norm = spec.eval(&x);
    if norm == 0.0 {
        return 0.0;
    }
    let dot: f64 = c.iter().zip(a).map(|(u, v)| u * v).sum();
    dot / norm
}

/// Multi-start stochastic hill climbing on the ratio, deterministic in seed.
fn ascent(spec: &NormSpec, c: &[f64], seed: u64) -> DualResult {
    let n = c.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts: Vec<Vec<f64>> = Vec::new();
    // Sign pattern of c (the l1/linf-style guess).
    starts.push(c.iter().map(|&v| if v >= 0.0 { 1.0 } else { -1.0 }).collect());
    // Each signed coordinate direction.
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = if c[k] >= 0.0 { 1.0 } else { -1.0 };
        starts.push(e);
    }
    // c itself and random directions.
    starts.push(c.to_vec());
    for _ in 0..6 {
        starts.push((0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect());
    }

    let mut best_val = 0.0f64;
    let mut converged = false;
    for start in starts {
        if start.iter().all(|&v| v == 0.0) {
            continue;
        }
        let mut a = start;
        let mut val = ratio(spec, c, &a);
        let mut step = 0.5f64;
        let mut stagnant = 0usize;
        while step > 1e-9 && stagnant < 3 {
            let mut improved = false;
            // Coordinate moves plus a few random directions at this scale.
            for k in 0..n + 4 {
                let mut cand = a.clone();
                if k < n {
                    for sgn in [1.0, -1.0] {
                        let mut c2 = a.clone();
                        c2[k] += sgn * step;
                        let v = ratio(spec, c, &c2);
                        if v > val {
                            val = v;
                            cand = c2;
                            improved = true;
                        }
                    }
                } else {
                    for x in cand.iter_mut() {
                        *x += step * rng.gen_range(-1.0..=1.0);
                    }
                    let v = ratio(spec, c, &cand);
                    if v > val {
                        val = v;
                        improved = true;
                    } else {
                        continue;
                    }
                }
                a = cand;
            }
            if !improved {
                step *= 0.5;
                stagnant += 1;
            } else {
                stagnant = 0;
            }
        }
        if val > best_val {
            best_val = val;
        }
        if step <= 1e-9 || stagnant >= 3 {
            converged = true;
        }
    }
    DualResult { value: best_val, converged }
}

/// Exhaustive refinement for N <= 3: by scale invariance the maximizing
/// direction can be taken on a face of the unit cube (some |a_k| = 1).
fn grid_refine(spec: &NormSpec, c: &[f64]) -> DualResult {
    let n = c.len();
    let mut best = 0.0f64;
    let mut best_pt = vec![0.0; n];
    // Coarse pass over all faces.
    let steps = 13;
    let scan = |fixed: usize, sign: f64, best: &mut f64, best_pt: &mut Vec<f64>| {
        let free: Vec<usize> = (0..n).filter(|&k| k != fixed).collect();
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut a = vec![0.0; n];
            a[fixed] = sign;
            for (j, &k) in free.iter().enumerate() {
                a[k] = -1.0 + 2.0 * idx[j] as f64 / (steps - 1) as f64;
            }
            let v = ratio(spec, c, &a);
            if v > *best {
                *best = v;
                *best_pt = a;
            }
            // Odometer increment.
            let mut j = 0;
            loop {
                if j == free.len() {
                    return;
                }
                idx[j] += 1;
                if idx[j] < steps {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    };
    for fixed in 0..n {
        for sign in [1.0, -1.0] {
            scan(fixed, sign, &mut best, &mut best_pt);
        }
    }
    // Local refinement around the best point.
    let mut h = 2.0 / (steps - 1) as f64;
    for _ in 0..40 {
        let mut improved = true;
        while improved {
            improved = false;
            for k in 0..n {
                for sgn in [1.0, -1.0] {
                    let mut cand = best_pt.clone();
                    cand[k] = (cand[k] + sgn * h).clamp(-1.0, 1.0);
                    let v = ratio(spec, c, &cand);
                    if v > best {
                        best = v;
                        best_pt = cand;
                        improved = true;
                    }
                }
            }
        }
        h *= 0.5;
    }
    DualResult { value: best, converged: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Weight;

    #[test]
    fn dual_of_sup_is_l1() {
        let c = SparseVector::from_entries([(1, 1.0), (2, 1.0)]);
        let r = dual_norm_eval(&NormSpec::SupNorm, &c, 2).unwrap();
        assert!((r.value - 2.0).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn l2_coordinate_is_self_dual() {
        let spec = NormSpec::WeightedLp { p: 2.0, weight: Weight::Constant(1.0) };
        let r = dual_norm_eval(&spec, &SparseVector::unit(1), 1).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn l2_dual_is_euclidean_length() {
        let spec = NormSpec::WeightedLp { p: 2.0, weight: Weight::Constant(1.0) };
        let c = SparseVector::from_entries([(1, 3.0), (2, 4.0)]);
        let r = dual_norm_eval(&spec, &c, 2).unwrap();
        assert!((r.value - 5.0).abs() < 5e-4, "{}", r.value);
    }

    #[test]
    fn value_dominates_any_feasible_point() {
        let spec = NormSpec::MaxOf(vec![
            NormSpec::SupNorm,
            NormSpec::WeightedLp { p: 2.0, weight: Weight::Constant(1.0) },
        ]);
        let c = SparseVector::from_entries([(1, 1.0), (2, 1.0), (3, 1.0)]);
        let r = dual_norm_eval(&spec, &c, 3).unwrap();
        // Feasible point a = (1,1,1)/‖(1,1,1)‖ has value 3/sqrt(3).
        let a = SparseVector::indicator(&[1u128, 2, 3].into_iter().collect());
        let feas = 3.0 / spec.eval(&a);
        assert!(r.value >= feas - 1e-9, "{} < {feas}", r.value);
    }

    #[test]
    fn zero_functional_has_zero_dual() {
        let r = dual_norm_eval(&NormSpec::SupNorm, &SparseVector::zero(), 4).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn support_outside_truncation_rejected() {
        let c = SparseVector::unit(10);
        assert!(matches!(
            dual_norm_eval(&NormSpec::SupNorm, &c, 4),
            Err(Error::Contract(_))
        ));
    }
}
