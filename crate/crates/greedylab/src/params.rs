//! Witness-certified lower-bound estimators for the Lebesgue-type and
//! democracy-type parameters.
//!
//! Every parameter here is a supremum over the whole space; the estimators
//! report lower bounds realized by explicit stored witnesses, never claimed
//! exact values. Re-evaluating a witness through [`reevaluate`] reproduces
//! the reported bound (self-certification). Denominators that are
//! themselves infima are computed over finite pools, which makes them upper
//! bounds and therefore only shrinks the reported ratios — the lower-bound
//! direction is preserved.
//!
//! Candidate families are fixed and versioned: (a) seeded random sign/decay
//! vectors, (b) proof-inspired perturbations x - P_A(x) + a (1 +/- d)
//! t^{-1} s^{-1} 1_{eps,E}, and (c) exhaustive small-support vectors with
//! grid coefficients. The search is deterministic in (seed, budget).

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cheb::{chebyshev_best_with, ChebBudget};
use crate::dual::dual_norm_eval;
use crate::error::{Error, Result};
use crate::greedy::{enumerate_greedy_sets, natural_greedy_set};
use crate::index::Index;
use crate::norms::NormSpec;
use crate::sparse::SparseVector;
use crate::weights::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKind {
    /// ‖P_A(x)‖ / ‖x‖ over t-greedy A.
    GBar,
    /// ‖x - P_A(x)‖ / ‖x‖ over t-greedy A.
    GHat,
    /// Chebyshev error over the worst t-greedy A divided by sigma_m.
    LChU,
    /// Chebyshev error over the best t-greedy A divided by sigma_m.
    LChL,
    /// ‖x - P_A(x)‖ / sigma_m (free supports).
    L,
    /// Same with the competing support disjoint from A.
    LD,
    /// ‖x - P_A(x)‖ / best projection error on m terms.
    LA,
    /// Same with the competing projection set disjoint from A.
    LAd,
    /// min-coefficient times ‖1_{eps,B}‖ over ‖x‖, |B| = m.
    Squeeze,
    /// ‖P_A(x)‖ / ‖x‖ over all |A| <= m (not only greedy).
    KM,
    /// min-coefficient times ‖1_{eps(x),A}‖ over ‖x‖, greedy A, x's signs.
    TruncQg,
    /// Same with arbitrary sign patterns on A.
    PropC,
    /// ‖1_{eps,B}‖ / ‖1_{eps,A}‖ over B subset of A.
    Succ,
    /// ‖x + 1_{eps,A}‖ / ‖x + 1_{eps',B}‖, w(A) <= w(B), all disjoint
    /// (only produced by `check_property_A`).
    PropA,
}

impl ParamKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "g_bar" => Self::GBar,
            "g_hat" => Self::GHat,
            "L_ch_u" => Self::LChU,
            "L_ch_l" => Self::LChL,
            "L" => Self::L,
            "L_d" => Self::LD,
            "L_a" => Self::LA,
            "L_ad" => Self::LAd,
            "squeeze" => Self::Squeeze,
            "k_m" => Self::KM,
            "trunc_qg" => Self::TruncQg,
            "prop_C" => Self::PropC,
            "succ" => Self::Succ,
            _ => return Err(Error::Contract(format!("unknown parameter kind {s:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::GBar => "g_bar",
            Self::GHat => "g_hat",
            Self::LChU => "L_ch_u",
            Self::LChL => "L_ch_l",
            Self::L => "L",
            Self::LD => "L_d",
            Self::LA => "L_a",
            Self::LAd => "L_ad",
            Self::Squeeze => "squeeze",
            Self::KM => "k_m",
            Self::TruncQg => "trunc_qg",
            Self::PropC => "prop_C",
            Self::Succ => "succ",
            Self::PropA => "prop_A",
        }
    }

    /// Kinds whose defining family always contains a ratio-1 configuration.
    pub fn has_trivial_unit_witness(&self) -> bool {
        matches!(self, Self::GHat | Self::L | Self::LA | Self::Succ)
    }
}

/// Everything needed to recompute a reported ratio from scratch.
#[derive(Debug, Clone)]
pub struct Witness {
    pub x: SparseVector,
    /// Primary set (greedy set A, or the set A of indicator kinds).
    pub a: BTreeSet<Index>,
    /// Secondary set (B), when the kind uses one.
    pub b: Option<BTreeSet<Index>>,
    /// Sign pattern on `a` (ascending index order), when the kind uses one.
    pub signs_a: Option<Vec<f64>>,
    /// Sign pattern on `b`.
    pub signs_b: Option<Vec<f64>>,
    /// Pool used for infimum denominators (recorded for auditability and
    /// exact re-evaluation).
    pub denom_pool: Vec<Index>,
    pub value: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Number of candidate vectors examined.
    pub candidates: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { candidates: 200 }
    }
}

#[derive(Debug, Clone)]
pub struct ParameterEstimate {
    pub kind: ParamKind,
    pub m: usize,
    pub t_or_s: f64,
    /// Sound lower bound realized by the stored witness.
    pub lower_bound: f64,
    pub witnesses: Vec<Witness>,
    pub budget: SearchBudget,
    pub pool: Vec<Index>,
    pub seed: u64,
    /// Soundness note for the denominator direction.
    pub note: &'static str,
}

/// Chebyshev effort inside denominators: keeps estimator ratios sound
/// (pool-limited upper bounds) while staying fast.
fn lean_budget() -> ChebBudget {
    ChebBudget { nodes_small: 4_000, nodes_large: 800 }
}

/// min over supports B (subset of `from`, |B| <= m) of the Chebyshev error;
/// an upper bound on the corresponding infimum.
fn sigma_over(spec: &NormSpec, x: &SparseVector, m: usize, from: &[Index]) -> f64 {
    let k = m.min(from.len());
    let mut best = spec.eval(x);
    let budget = lean_budget();
    subsets_of_size(from, k, &mut |b| {
        let bs: BTreeSet<Index> = b.iter().copied().collect();
        if let Ok(r) = chebyshev_best_with(spec, x, &bs, &budget) {
            best = best.min(r.error);
        }
    });
    best
}

/// min over B subset of `from` (within supp(x)), |B| <= m, of ‖x - P_B(x)‖.
fn proj_error_over(spec: &NormSpec, x: &SparseVector, m: usize, from: &[Index]) -> f64 {
    let from: Vec<Index> = from.iter().copied().filter(|&i| x.get(i) != 0.0).collect();
    let mut best = spec.eval(x);
    for j in 0..=m.min(from.len()) {
        subsets_of_size(&from, j, &mut |b| {
            let bs: BTreeSet<Index> = b.iter().copied().collect();
            best = best.min(spec.eval(&x.sub(&x.restrict(&bs))));
        });
    }
    best
}

fn subsets_of_size<F: FnMut(&[Index])>(pool: &[Index], k: usize, f: &mut F) {
    fn rec<F: FnMut(&[Index])>(pool: &[Index], k: usize, from: usize, acc: &mut Vec<Index>, f: &mut F) {
        if acc.len() == k {
            f(acc);
            return;
        }
        if pool.len() - from < k - acc.len() {
            return;
        }
        for p in from..pool.len() {
            acc.push(pool[p]);
            rec(pool, k, p + 1, acc, f);
            acc.pop();
        }
    }
    rec(pool, k, 0, &mut Vec::new(), f);
}

fn all_subsets<F: FnMut(&[Index])>(pool: &[Index], max_size: usize, f: &mut F) {
    for k in 0..=max_size.min(pool.len()) {
        subsets_of_size(pool, k, f);
    }
}

/// Sign patterns over n slots; exhaustive for n <= 8, else the alternating
/// and all-ones patterns plus seeded samples.
fn sign_patterns(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    if n == 0 {
        return vec![vec![]];
    }
    if n <= 8 {
        (0u32..1 << n)
            .map(|mask| {
                (0..n)
                    .map(|k| if mask >> k & 1 == 1 { -1.0 } else { 1.0 })
                    .collect()
            })
            .collect()
    } else {
        let mut out = vec![
            vec![1.0; n],
            (0..n).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect(),
        ];
        for _ in 0..6 {
            out.push((0..n).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect());
        }
        out
    }
}

/// The denominator pool for a candidate: its support plus a few extra pool
/// indices, capped to keep the exhaustive searches cheap.
fn denom_pool(x: &SparseVector, pool: &[Index], cap: usize) -> Vec<Index> {
    let mut out: Vec<Index> = x.support().into_iter().collect();
    for &i in pool {
        if out.len() >= cap {
            break;
        }
        if !out.contains(&i) {
            out.push(i);
        }
    }
    out.sort();
    out.truncate(cap);
    // The pool must keep covering the support.
    let mut supp: Vec<Index> = x.support().into_iter().collect();
    supp.extend(out);
    supp.sort();
    supp.dedup();
    supp
}

/// Generates the versioned candidate family.
fn candidates(
    m: usize,
    t: f64,
    pool: &[Index],
    budget: &SearchBudget,
    seed: u64,
) -> Vec<SparseVector> {
    let mut out: Vec<SparseVector> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if pool.is_empty() {
        return out;
    }

    // Trivial candidate: geometric decay on the first pool indices.
    let k0 = pool.len().min(m.max(1) + 2);
    out.push(SparseVector::from_entries(
        pool.iter().take(k0).enumerate().map(|(k, &i)| (i, 0.5f64.powi(k as i32))),
    ));

    // (c) exhaustive small supports with grid coefficients.
    let small: Vec<Index> = pool.iter().take(4).copied().collect();
    let grid = [1.0, -1.0, 0.5, -0.5];
    for &i in &small {
        for g in grid {
            out.push(SparseVector::from_entries([(i, g)]));
        }
    }
    for a in 0..small.len() {
        for b in a + 1..small.len() {
            for ga in grid {
                for gb in grid {
                    out.push(SparseVector::from_entries([(small[a], ga), (small[b], gb)]));
                }
            }
        }
    }
    for k in 1..=pool.len().min(m + 1) {
        out.push(SparseVector::from_entries(pool.iter().take(k).map(|&i| (i, 1.0))));
    }

    // (a) random sign/decay vectors and (b) proof-inspired perturbations.
    while out.len() < budget.candidates {
        let size = rng.gen_range(m.max(1)..=pool.len().min(m + 4).max(m.max(1)));
        let mut idx = pool.to_vec();
        // Seeded partial shuffle.
        for k in 0..size.min(idx.len()) {
            let j = rng.gen_range(k..idx.len());
            idx.swap(k, j);
        }
        let ratio: f64 = [0.5, 0.8, 0.95][rng.gen_range(0..3)];
        let x = SparseVector::from_entries(idx.iter().take(size).enumerate().map(|(k, &i)| {
            let sgn = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            (i, sgn * ratio.powi(k as i32))
        }));
        if x.is_zero() {
            continue;
        }
        // Proof-inspired perturbation of the same base vector.
        if x.support_len() >= m && m >= 1 {
            let a_set = natural_greedy_set(&x, m);
            let a_min = x.min_abs_over(&a_set);
            let rest = x.sub(&x.restrict(&a_set));
            let e: Vec<Index> = pool
                .iter()
                .copied()
                .filter(|i| x.get(*i) == 0.0)
                .take(m)
                .collect();
            if e.len() == m && m > 0 {
                for delta in [0.99, 1.01] {
                    let level = a_min * delta / (t * t);
                    let pert = SparseVector::from_entries(e.iter().map(|&i| {
                        let sgn = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                        (i, sgn * level)
                    }));
                    out.push(rest.add(&pert));
                }
            }
        }
        out.push(x);
    }
    out.truncate(budget.candidates.max(1));
    out
}

/// Evaluates the defining ratio of `kind` for one candidate, returning the
/// best witness the candidate yields (if any).
fn evaluate_candidate(
    spec: &NormSpec,
    kind: ParamKind,
    m: usize,
    t: f64,
    pool: &[Index],
    x: &SparseVector,
    rng_seed: u64,
) -> Option<Witness> {
    let norm_x = spec.eval(x);
    if norm_x == 0.0 || x.support_len() < m {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let greedy = enumerate_greedy_sets(x, m, t).ok()?;
    let dp = denom_pool(x, pool, 10);
    let budget = lean_budget();

    let mk = |a: BTreeSet<Index>,
              b: Option<BTreeSet<Index>>,
              sa: Option<Vec<f64>>,
              sb: Option<Vec<f64>>,
              dpool: Vec<Index>,
              value: f64| Witness {
        x: x.clone(),
        a,
        b,
        signs_a: sa,
        signs_b: sb,
        denom_pool: dpool,
        value,
    };

    let best = |w: Option<Witness>, cand: Witness| -> Option<Witness> {
        match w {
            Some(old) if old.value >= cand.value => Some(old),
            _ => Some(cand),
        }
    };

    let mut out: Option<Witness> = None;
    match kind {
        ParamKind::GBar => {
            for a in greedy {
                let v = spec.eval(&x.restrict(&a)) / norm_x;
                out = best(out, mk(a, None, None, None, vec![], v));
            }
        }
        ParamKind::GHat => {
            for a in greedy {
                let v = spec.eval(&x.sub(&x.restrict(&a))) / norm_x;
                out = best(out, mk(a, None, None, None, vec![], v));
            }
        }
        ParamKind::LChU | ParamKind::LChL => {
            let denom = sigma_over(spec, x, m, &dp);
            if denom <= 1e-12 * norm_x.max(1.0) {
                return None;
            }
            let mut per_a: Vec<(BTreeSet<Index>, f64)> = Vec::new();
            for a in greedy {
                if let Ok(r) = chebyshev_best_with(spec, x, &a, &budget) {
                    per_a.push((a, r.error / denom));
                }
            }
            let chosen = if kind == ParamKind::LChU {
                per_a.into_iter().max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            } else {
                per_a.into_iter().min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            };
            if let Some((a, v)) = chosen {
                out = best(out, mk(a, None, None, None, dp.clone(), v));
            }
        }
        ParamKind::L => {
            let denom = sigma_over(spec, x, m, &dp);
            if denom <= 1e-12 * norm_x.max(1.0) {
                return None;
            }
            for a in greedy {
                let v = spec.eval(&x.sub(&x.restrict(&a))) / denom;
                out = best(out, mk(a, None, None, None, dp.clone(), v));
            }
        }
        ParamKind::LD => {
            for a in greedy {
                let from: Vec<Index> = dp.iter().copied().filter(|i| !a.contains(i)).collect();
                let denom = sigma_over(spec, x, m, &from);
                if denom <= 1e-12 * norm_x.max(1.0) {
                    continue;
                }
                let v = spec.eval(&x.sub(&x.restrict(&a))) / denom;
                out = best(out, mk(a, None, None, None, from, v));
            }
        }
        ParamKind::LA => {
            let denom = proj_error_over(spec, x, m, &dp);
            if denom <= 1e-12 * norm_x.max(1.0) {
                return None;
            }
            for a in greedy {
                let v = spec.eval(&x.sub(&x.restrict(&a))) / denom;
                out = best(out, mk(a, None, None, None, dp.clone(), v));
            }
        }
        ParamKind::LAd => {
            for a in greedy {
                let from: Vec<Index> = dp.iter().copied().filter(|i| !a.contains(i)).collect();
                let denom = proj_error_over(spec, x, m, &from);
                if denom <= 1e-12 * norm_x.max(1.0) {
                    continue;
                }
                let v = spec.eval(&x.sub(&x.restrict(&a))) / denom;
                out = best(out, mk(a, None, None, None, from, v));
            }
        }
        ParamKind::Squeeze => {
            // Candidate B sets: leading pool indices, trailing pool
            // indices, and seeded samples; each with sign patterns.
            let mut b_sets: Vec<BTreeSet<Index>> = Vec::new();
            if pool.len() >= m && m > 0 {
                b_sets.push(pool.iter().take(m).copied().collect());
                b_sets.push(pool.iter().rev().take(m).copied().collect());
                for _ in 0..4 {
                    let mut idx = pool.to_vec();
                    for k in 0..m.min(idx.len()) {
                        let j = rng.gen_range(k..idx.len());
                        idx.swap(k, j);
                    }
                    b_sets.push(idx.into_iter().take(m).collect());
                }
            }
            for a in greedy {
                let amin = x.min_abs_over(&a);
                for b in &b_sets {
                    for signs in sign_patterns(b.len(), &mut rng) {
                        let ind = SparseVector::signed_indicator(b, &signs);
                        let v = amin * spec.eval(&ind) / norm_x;
                        out = best(
                            out,
                            mk(a.clone(), Some(b.clone()), None, Some(signs), vec![], v),
                        );
                    }
                }
            }
        }
        ParamKind::KM => {
            let supp: Vec<Index> = x.support().into_iter().collect();
            if supp.len() > 16 {
                return None;
            }
            all_subsets(&supp, m, &mut |a| {
                let a: BTreeSet<Index> = a.iter().copied().collect();
                let v = spec.eval(&x.restrict(&a)) / norm_x;
                out = best(out.take(), mk(a, None, None, None, vec![], v));
            });
        }
        ParamKind::TruncQg => {
            for a in greedy {
                let amin = x.min_abs_over(&a);
                let signs: Vec<f64> = a.iter().map(|&i| x.get(i).signum()).collect();
                let ind = SparseVector::signed_indicator(&a, &signs);
                let v = amin * spec.eval(&ind) / norm_x;
                out = best(out, mk(a.clone(), None, Some(signs), None, vec![], v));
            }
        }
        ParamKind::PropC => {
            for a in greedy {
                let amin = x.min_abs_over(&a);
                for signs in sign_patterns(a.len(), &mut rng) {
                    let ind = SparseVector::signed_indicator(&a, &signs);
                    let v = amin * spec.eval(&ind) / norm_x;
                    out = best(out.take(), mk(a.clone(), None, Some(signs), None, vec![], v));
                }
            }
        }
        ParamKind::Succ => {
            // The candidate vector only supplies its support as the set A.
            let a: BTreeSet<Index> = x.support();
            if a.len() > 8 {
                return None;
            }
            let av: Vec<Index> = a.iter().copied().collect();
            for signs in sign_patterns(a.len(), &mut rng) {
                let full = SparseVector::signed_indicator(&a, &signs);
                let denom = spec.eval(&full);
                if denom == 0.0 {
                    continue;
                }
                all_subsets(&av, a.len(), &mut |b| {
                    let bset: BTreeSet<Index> = b.iter().copied().collect();
                    let sub = full.restrict(&bset);
                    let v = spec.eval(&sub) / denom;
                    out = best(
                        out.take(),
                        mk(a.clone(), Some(bset), Some(signs.clone()), None, vec![], v),
                    );
                });
            }
        }
        ParamKind::PropA => return None, // produced by check_property_A only
    }
    out
}

/// Recomputes the defining ratio from a stored witness; used by the
/// self-certification invariant and by report verification.
pub fn reevaluate(spec: &NormSpec, kind: ParamKind, m: usize, _t: f64, w: &Witness) -> Result<f64> {
    let x = &w.x;
    let norm_x = spec.eval(x);
    let need = |cond: bool, what: &str| -> Result<()> {
        if cond {
            Ok(())
        } else {
            Err(Error::Contract(format!("witness is missing {what}")))
        }
    };
    let v = match kind {
        ParamKind::GBar => spec.eval(&x.restrict(&w.a)) / norm_x,
        ParamKind::GHat => spec.eval(&x.sub(&x.restrict(&w.a))) / norm_x,
        ParamKind::LChU | ParamKind::LChL => {
            let denom = sigma_over(spec, x, m, &w.denom_pool);
            let r = chebyshev_best_with(spec, x, &w.a, &lean_budget())?;
            r.error / denom
        }
        ParamKind::L | ParamKind::LD => {
            let denom = sigma_over(spec, x, m, &w.denom_pool);
            spec.eval(&x.sub(&x.restrict(&w.a))) / denom
        }
        ParamKind::LA | ParamKind::LAd => {
            let denom = proj_error_over(spec, x, m, &w.denom_pool);
            spec.eval(&x.sub(&x.restrict(&w.a))) / denom
        }
        ParamKind::Squeeze => {
            need(w.b.is_some() && w.signs_b.is_some(), "B and its signs")?;
            let ind = SparseVector::signed_indicator(w.b.as_ref().unwrap(), w.signs_b.as_ref().unwrap());
            x.min_abs_over(&w.a) * spec.eval(&ind) / norm_x
        }
        ParamKind::KM => spec.eval(&x.restrict(&w.a)) / norm_x,
        ParamKind::TruncQg | ParamKind::PropC => {
            need(w.signs_a.is_some(), "the sign pattern")?;
            let ind = SparseVector::signed_indicator(&w.a, w.signs_a.as_ref().unwrap());
            x.min_abs_over(&w.a) * spec.eval(&ind) / norm_x
        }
        ParamKind::Succ => {
            need(w.b.is_some() && w.signs_a.is_some(), "B and the sign pattern")?;
            let full = SparseVector::signed_indicator(&w.a, w.signs_a.as_ref().unwrap());
            let sub = full.restrict(w.b.as_ref().unwrap());
            spec.eval(&sub) / spec.eval(&full)
        }
        ParamKind::PropA => {
            need(w.b.is_some() && w.signs_a.is_some() && w.signs_b.is_some(), "B and signs")?;
            let ia = SparseVector::signed_indicator(&w.a, w.signs_a.as_ref().unwrap());
            let ib = SparseVector::signed_indicator(w.b.as_ref().unwrap(), w.signs_b.as_ref().unwrap());
            spec.eval(&x.add(&ia)) / spec.eval(&x.add(&ib))
        }
    };
    Ok(v)
}

/// Lower-bound estimator for one parameter kind.
pub fn estimate_parameter(
    spec: &NormSpec,
    kind: ParamKind,
    m: usize,
    t: f64,
    budget: &SearchBudget,
    pool: &[Index],
    seed: u64,
) -> Result<ParameterEstimate> {
    if kind == ParamKind::PropA {
        return Err(Error::Contract(
            "the disjoint-swap property constant is produced by check_property_A".into(),
        ));
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::Contract(format!("t must be in (0, 1], got {t}")));
    }
    if pool.is_empty() {
        return Err(Error::Contract("pool must be nonempty".into()));
    }
    let cands = candidates(m, t, pool, budget, seed);
    // Parallel evaluation with an ordered (deterministic) merge: the first
    // candidate achieving the maximal value wins.
    let results: Vec<Option<Witness>> = cands
        .par_iter()
        .enumerate()
        .map(|(k, x)| evaluate_candidate(spec, kind, m, t, pool, x, seed ^ (k as u64) << 17))
        .collect();
    let mut best: Option<Witness> = None;
    for w in results.into_iter().flatten() {
        match &best {
            Some(b) if b.value >= w.value => {}
            _ => best = Some(w),
        }
    }
    let witness = best.ok_or_else(|| {
        Error::Budget("no candidate produced an evaluable witness within the budget".into())
    })?;
    Ok(ParameterEstimate {
        kind,
        m,
        t_or_s: t,
        lower_bound: witness.value,
        witnesses: vec![witness],
        budget: *budget,
        pool: pool.to_vec(),
        seed,
        note: "infimum denominators are pool-limited upper bounds; the ratio is a sound lower bound",
    })
}

/// One row of a democracy profile.
#[derive(Debug, Clone, Copy)]
pub struct DemocracyRow {
    pub target_w: f64,
    /// max ‖1_{eps,A}‖ over examined sets with w(A) <= target.
    pub max_below: f64,
    /// min ‖1_{eps,A}‖ over examined sets with w(A) >= target.
    pub min_above: f64,
    /// max_below / min_above: a sound lower bound on the superdemocracy
    /// constant (or democracy constant when signs are restricted to +1).
    pub ratio: f64,
}

/// Profiles indicator norms across w-measure budgets. `superdemocratic`
/// ranges over sign patterns; otherwise signs are all +1.
pub fn democracy_profile(
    spec: &NormSpec,
    w: &Weight,
    targets: &[f64],
    pool: &[Index],
    superdemocratic: bool,
    seed: u64,
) -> Result<Vec<DemocracyRow>> {
    if pool.len() > 16 {
        return Err(Error::Budget("democracy pool capped at 16 indices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Examined (measure, norm) pairs.
    let mut points: Vec<(f64, f64)> = Vec::new();
    let pv: Vec<Index> = pool.to_vec();
    let mut sets: Vec<BTreeSet<Index>> = Vec::new();
    all_subsets(&pv, 8.min(pv.len()), &mut |a| {
        if !a.is_empty() {
            sets.push(a.iter().copied().collect());
        }
    });
    for a in &sets {
        let measure = w.weight_measure(a)?;
        let patterns = if superdemocratic {
            sign_patterns(a.len(), &mut rng)
        } else {
            vec![vec![1.0; a.len()]]
        };
        for signs in patterns {
            let norm = spec.eval(&SparseVector::signed_indicator(a, &signs));
            points.push((measure, norm));
        }
    }
    let mut rows = Vec::new();
    for &target in targets {
        let max_below = points
            .iter()
            .filter(|(m, _)| *m <= target)
            .map(|&(_, n)| n)
            .fold(f64::NEG_INFINITY, f64::max);
        let min_above = points
            .iter()
            .filter(|(m, _)| *m >= target)
            .map(|&(_, n)| n)
            .fold(f64::INFINITY, f64::min);
        let ratio = if max_below.is_finite() && min_above.is_finite() && min_above > 0.0 {
            max_below / min_above
        } else {
            f64::NAN
        };
        rows.push(DemocracyRow { target_w: target, max_below, min_above, ratio });
    }
    Ok(rows)
}

/// Lower bound on the disjoint sign-swap constant: samples
/// (x, A, B, eps, eps') with ‖x‖_inf <= 1, w(A) <= w(B), and A, B, supp(x)
/// pairwise disjoint, and maximizes ‖x + 1_{eps,A}‖ / ‖x + 1_{eps',B}‖.
pub fn check_property_a(
    spec: &NormSpec,
    w: &Weight,
    pool: &[Index],
    budget: &SearchBudget,
    seed: u64,
) -> Result<ParameterEstimate> {
    if pool.len() < 3 {
        return Err(Error::Contract("pool must have at least 3 indices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Witness> = None;
    for _ in 0..budget.candidates.max(1) {
        // Split a shuffled pool into A | B | support of x.
        let mut idx = pool.to_vec();
        for k in 0..idx.len() {
            let j = rng.gen_range(k..idx.len());
            idx.swap(k, j);
        }
        let na = rng.gen_range(1..=idx.len() / 3);
        let nb = rng.gen_range(1..=idx.len() / 3);
        let a: BTreeSet<Index> = idx[..na].iter().copied().collect();
        let b: BTreeSet<Index> = idx[na..na + nb].iter().copied().collect();
        let rest = &idx[na + nb..];
        let (wa, wb) = (w.weight_measure(&a)?, w.weight_measure(&b)?);
        if wa > wb {
            continue;
        }
        let nx = rng.gen_range(0..=rest.len().min(4));
        let x = SparseVector::from_entries(
            rest.iter().take(nx).map(|&i| (i, rng.gen_range(-1.0..=1.0f64))),
        );
        let sa: Vec<f64> = (0..a.len()).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
        let sb: Vec<f64> = (0..b.len()).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
        let ia = SparseVector::signed_indicator(&a, &sa);
        let ib = SparseVector::signed_indicator(&b, &sb);
        let denom = spec.eval(&x.add(&ib));
        if denom == 0.0 {
            continue;
        }
        let v = spec.eval(&x.add(&ia)) / denom;
        let cand = Witness {
            x,
            a,
            b: Some(b),
            signs_a: Some(sa),
            signs_b: Some(sb),
            denom_pool: vec![],
            value: v,
        };
        match &best {
            Some(cur) if cur.value >= cand.value => {}
            _ => best = Some(cand),
        }
    }
    let witness = best
        .ok_or_else(|| Error::Budget("no admissible (A, B, x) sample within the budget".into()))?;
    Ok(ParameterEstimate {
        kind: ParamKind::PropA,
        m: 0,
        t_or_s: 1.0,
        lower_bound: witness.value,
        witnesses: vec![witness],
        budget: *budget,
        pool: pool.to_vec(),
        seed,
        note: "sampled lower bound on the least disjoint sign-swap constant",
    })
}

/// Lower bound on the bidemocracy constant: max over sampled A, B of
/// ‖1_A‖ * ‖1_B‖* / m. Returns (bound, dual-solver convergence).
pub fn bidemocracy_lb(
    spec: &NormSpec,
    m: usize,
    n_dim: usize,
    budget: &SearchBudget,
    seed: u64,
) -> Result<(f64, bool)> {
    if m == 0 {
        return Err(Error::Contract("m must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    let mut converged = true;
    let mut try_pair = |a: &BTreeSet<Index>, b: &BTreeSet<Index>| -> Result<()> {
        let na = spec.eval(&SparseVector::indicator(a));
        let dual = dual_norm_eval(spec, &SparseVector::indicator(b), n_dim)?;
        converged &= dual.converged;
        best = best.max(na * dual.value / m as f64);
        Ok(())
    };
    // Leading blocks first, then seeded samples.
    for k in 1..=m.min(n_dim) {
        let a: BTreeSet<Index> = (1..=k as Index).collect();
        try_pair(&a, &a)?;
    }
    for _ in 0..budget.candidates.min(64) {
        let ka = rng.gen_range(1..=m.min(n_dim));
        let kb = rng.gen_range(1..=m.min(n_dim));
        let mut idx: Vec<Index> = (1..=n_dim as Index).collect();
        for k in 0..idx.len() {
            let j = rng.gen_range(k..idx.len());
            idx.swap(k, j);
        }
        let a: BTreeSet<Index> = idx[..ka].iter().copied().collect();
        let b: BTreeSet<Index> = idx[ka..(ka + kb).min(idx.len())].iter().copied().collect();
        if b.is_empty() {
            continue;
        }
        try_pair(&a, &b)?;
    }
    Ok((best, converged))
}
