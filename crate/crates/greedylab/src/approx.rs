//! Best m-term approximation errors: plain (free coefficients), projectional,
//! and their weighted (w-measure budget) variants.
//!
//! All four are infima over supports drawn from a finite pool, so the
//! returned values are upper bounds of the true infima over all of the index
//! set; callers that use them as denominators of ratios obtain valid lower
//! bounds. Pools are capped and enumeration is exhaustive (with knapsack-
//! style pruning for weighted budgets); exceeding a cap is an explicit
//! budget error, never a truncated answer.

use std::collections::BTreeSet;

use crate::cheb::{chebyshev_best_with, ChebBudget};
use crate::error::{Error, Result};
use crate::index::Index;
use crate::norms::NormSpec;
use crate::sparse::SparseVector;
use crate::weights::Weight;

pub const POOL_CAP: usize = 24;
/// Cap on enumerated supports per call.
const SUBSET_CAP: usize = 1 << 20;

fn check_pool(x: &SparseVector, pool: &BTreeSet<Index>) -> Result<()> {
    if pool.len() > POOL_CAP {
        return Err(Error::Budget(format!(
            "pool size {} exceeds cap {POOL_CAP}",
            pool.len()
        )));
    }
    if !x.support().is_subset(pool) {
        return Err(Error::Contract("pool must contain supp(x)".into()));
    }
    Ok(())
}

/// Chebyshev budget used inside sigma searches: supports here are small, so
/// a reduced node budget keeps full enumeration affordable.
fn inner_budget() -> ChebBudget {
    ChebBudget { nodes_small: 50_000, nodes_large: 4_000 }
}

/// sigma_m: min over supports B with |B| <= m drawn from the pool of the
/// Chebyshev error over B. Since the error is nonincreasing in B, only
/// supports of size exactly min(m, |pool|) need to be searched.
pub fn sigma_m(spec: &NormSpec, x: &SparseVector, m: usize, pool: &BTreeSet<Index>) -> Result<f64> {
    check_pool(x, pool)?;
    let pool: Vec<Index> = pool.iter().copied().collect();
    let k = m.min(pool.len());
    if binomial(pool.len(), k) > SUBSET_CAP {
        return Err(Error::Budget(format!(
            "C({}, {k}) supports exceed the enumeration cap", pool.len()
        )));
    }
    let mut best = spec.eval(x); // B = empty.
    let budget = inner_budget();
    let mut acc = Vec::new();
    let mut err: Option<Error> = None;
    enumerate_subsets(&pool, k, 0, &mut acc, &mut |b| {
        let bs: BTreeSet<Index> = b.iter().copied().collect();
        match chebyshev_best_with(spec, x, &bs, &budget) {
            Ok(r) => best = best.min(r.error),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// sigma-tilde_m: min over B subset of supp(x), |B| <= m, of ‖x - P_B(x)‖.
/// Projections are insensitive to off-support indices, so restricting B to
/// the support is lossless; all sizes 0..=m must be tried (projection error
/// is not monotone in B).
pub fn sigma_tilde_m(spec: &NormSpec, x: &SparseVector, m: usize) -> Result<f64> {
    let supp: Vec<Index> = x.support().into_iter().collect();
    if supp.len() > POOL_CAP {
        return Err(Error::Budget(format!(
            "|supp(x)| = {} exceeds cap {POOL_CAP}",
            supp.len()
        )));
    }
    let mut total: usize = 0;
    for j in 0..=m.min(supp.len()) {
        total = total.saturating_add(binomial(supp.len(), j));
    }
    if total > SUBSET_CAP {
        return Err(Error::Budget("subset count exceeds the enumeration cap".into()));
    }
    let mut best = spec.eval(x);
    for j in 0..=m.min(supp.len()) {
        let mut acc = Vec::new();
        enumerate_subsets(&supp, j, 0, &mut acc, &mut |b| {
            let bs: BTreeSet<Index> = b.iter().copied().collect();
            best = best.min(spec.eval(&x.sub(&x.restrict(&bs))));
        });
    }
    Ok(best)
}

/// Weighted sigma: min over supports B from the pool with w(B) <= W of the
/// Chebyshev error over B. Enumerates the inclusion-maximal feasible
/// supports by depth-first knapsack (error is nonincreasing in B, so
/// non-maximal supports never win).
pub fn weighted_sigma(
    spec: &NormSpec,
    x: &SparseVector,
    w: &Weight,
    budget_w: f64,
    pool: &BTreeSet<Index>,
) -> Result<f64> {
    check_pool(x, pool)?;
    let pool: Vec<Index> = pool.iter().copied().collect();
    let weights: Vec<f64> = pool
        .iter()
        .map(|&i| w.weight_at(i))
        .collect::<Result<Vec<_>>>()?;
    let mut best = spec.eval(x);
    let cheb_budget = inner_budget();
    let mut count = 0usize;
    let mut err: Option<Error> = None;
    // DFS over include/exclude decisions, emitting maximal feasible sets.
    fn dfs(
        pos: usize,
        used: f64,
        chosen: &mut Vec<Index>,
        pool: &[Index],
        weights: &[f64],
        budget_w: f64,
        visit: &mut dyn FnMut(&[Index]),
        count: &mut usize,
    ) -> Result<()> {
        if *count > SUBSET_CAP {
            return Err(Error::Budget("feasible-support count exceeds the cap".into()));
        }
        if pos == pool.len() {
            *count += 1;
            visit(chosen);
            return Ok(());
        }
        // Maximality: skip "exclude" when the item still fits and every
        // continuation could have included it — simplest correct form:
        // always try include when feasible; try exclude too (needed to
        // reach other maximal sets), accepting some non-maximal emissions.
        if used + weights[pos] <= budget_w {
            chosen.push(pool[pos]);
            dfs(pos + 1, used + weights[pos], chosen, pool, weights, budget_w, visit, count)?;
            chosen.pop();
        }
        dfs(pos + 1, used, chosen, pool, weights, budget_w, visit, count)
    }
    let mut chosen = Vec::new();
    dfs(
        0,
        0.0,
        &mut chosen,
        &pool,
        &weights,
        budget_w,
        &mut |b| {
            if err.is_some() {
                return;
            }
            let bs: BTreeSet<Index> = b.iter().copied().collect();
            match chebyshev_best_with(spec, x, &bs, &cheb_budget) {
                Ok(r) => best = best.min(r.error),
                Err(e) => err = Some(e),
            }
        },
        &mut count,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// Weighted projection error: min over B subset of supp(x) with w(B) <= W of
/// ‖x - P_B(x)‖, exhaustive with knapsack pruning.
pub fn weighted_projection_error(
    spec: &NormSpec,
    x: &SparseVector,
    w: &Weight,
    budget_w: f64,
) -> Result<f64> {
    let supp: Vec<Index> = x.support().into_iter().collect();
    if supp.len() > POOL_CAP {
        return Err(Error::Budget(format!(
            "|supp(x)| = {} exceeds cap {POOL_CAP}",
            supp.len()
        )));
    }
    let weights: Vec<f64> = supp
        .iter()
        .map(|&i| w.weight_at(i))
        .collect::<Result<Vec<_>>>()?;
    let mut best = spec.eval(x); // B = empty is always feasible (W >= 0).
    let mut chosen: Vec<Index> = Vec::new();
    fn dfs(
        pos: usize,
        used: f64,
        chosen: &mut Vec<Index>,
        supp: &[Index],
        weights: &[f64],
        budget_w: f64,
        visit: &mut dyn FnMut(&[Index]),
    ) {
        visit(chosen);
        for p in pos..supp.len() {
            if used + weights[p] <= budget_w {
                chosen.push(supp[p]);
                dfs(p + 1, used + weights[p], chosen, supp, weights, budget_w, visit);
                chosen.pop();
            }
        }
    }
    dfs(0, 0.0, &mut chosen, &supp, &weights, budget_w, &mut |b| {
        let bs: BTreeSet<Index> = b.iter().copied().collect();
        best = best.min(spec.eval(&x.sub(&x.restrict(&bs))));
    });
    Ok(best)
}

fn enumerate_subsets<F: FnMut(&[Index])>(
    pool: &[Index],
    k: usize,
    from: usize,
    acc: &mut Vec<Index>,
    f: &mut F,
) {
    if acc.len() == k {
        f(acc);
        return;
    }
    if pool.len() - from < k - acc.len() {
        return;
    }
    for p in from..pool.len() {
        acc.push(pool[p]);
        enumerate_subsets(pool, k, p + 1, acc, f);
        acc.pop();
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}
