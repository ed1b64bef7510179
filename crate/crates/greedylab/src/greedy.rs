//! Greedy sets: natural greedy ordering, the m-t-greedy family G(x, m, t),
//! its exact enumeration, and s^2-greedy superset search.
//!
//! A set A with |A| = m is m-t-greedy for x when
//!   min_{j in A} |x_j| >= t * max_{j not in A} |x_j|.
//! Coefficient comparisons are exact binary64 comparisons: inputs are taken
//! as exact, so ties are unambiguous.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::index::Index;
use crate::sparse::SparseVector;

/// Default cap on m for full enumeration of G(x, m, t).
pub const ENUMERATION_CAP: usize = 20;

/// P_A(x): restriction of x to A.
pub fn project(x: &SparseVector, a: &BTreeSet<Index>) -> SparseVector {
    x.restrict(a)
}

/// The natural greedy set: the m indices of largest |coefficient|, ties
/// broken toward smaller indices. When m exceeds the support size, pads
/// deterministically with the smallest indices not in the support.
pub fn natural_greedy_set(x: &SparseVector, m: usize) -> BTreeSet<Index> {
    let ordered = x.support_by_magnitude();
    let mut a: BTreeSet<Index> = ordered.iter().take(m).map(|&(i, _)| i).collect();
    if m > ordered.len() {
        let supp = x.support();
        let mut i: Index = 1;
        while a.len() < m {
            if !supp.contains(&i) {
                a.insert(i);
            }
            i += 1;
        }
    }
    a
}

/// Whether A is a |A|-t-greedy set for x.
pub fn is_greedy_set(x: &SparseVector, a: &BTreeSet<Index>, t: f64) -> bool {
    let min_in = if a.is_empty() { f64::INFINITY } else { x.min_abs_over(a) };
    let max_out = x
        .iter()
        .filter(|(i, _)| !a.contains(i))
        .map(|(_, c)| c.abs())
        .fold(0.0f64, f64::max);
    min_in >= t * max_out
}

/// Exactly G(x, m, t), the family of all m-t-greedy sets.
///
/// Requires m <= |supp(x)| (otherwise the family is the infinite collection
/// of all size-m supersets of the support) and m within the enumeration cap.
/// Enumeration walks the support sorted by |coefficient| descending: a valid
/// set consists of a forced head (every index strictly above the first
/// skipped magnitude), then choices among indices whose magnitude is at
/// least t times the first skipped magnitude. Each candidate is re-verified
/// by `is_greedy_set`.
pub fn enumerate_greedy_sets(
    x: &SparseVector,
    m: usize,
    t: f64,
) -> Result<Vec<BTreeSet<Index>>> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::Contract(format!("t must be in (0, 1], got {t}")));
    }
    if m > ENUMERATION_CAP {
        return Err(Error::Budget(format!(
            "m = {m} exceeds the enumeration cap {ENUMERATION_CAP}"
        )));
    }
    let ordered = x.support_by_magnitude();
    let k = ordered.len();
    if m > k {
        return Err(Error::Domain(format!(
            "m = {m} exceeds |supp(x)| = {k}: G(x,m,t) is the unbounded family of \
             size-m supersets of the support"
        )));
    }
    if m == 0 {
        // The empty set is 0-t-greedy only when x = 0; otherwise min over
        // the empty set is +infinity, so it is vacuously greedy.
        return Ok(vec![BTreeSet::new()]);
    }

    let mut out: Vec<BTreeSet<Index>> = Vec::new();
    // Case 1: no support index skipped before the m-th pick only happens
    // via the loop below with j = m..; handle uniformly: choose the first
    // skipped sorted position j (0-based). Positions 0..j are all chosen,
    // leaving m - j picks among positions j+1..k, each required to have
    // magnitude >= t * |ordered[j]|. j ranges over 0..=m (j == m means the
    // head 0..m-1 was taken contiguously; then position m onward are all
    // outside and only the threshold against |ordered[m]| matters, which
    // is exactly the j == m head case).
    for j in (0..=m).rev() {
        if j == m {
            // Contiguous head: A = top-m positions.
            let a: BTreeSet<Index> = ordered.iter().take(m).map(|&(i, _)| i).collect();
            if is_greedy_set(x, &a, t) {
                push_unique(&mut out, a);
            }
            continue;
        }
        if j >= k {
            continue;
        }
        let skipped_mag = ordered[j].1.abs();
        let need = m - j;
        // Eligible tail positions: magnitude >= t * skipped magnitude.
        let eligible: Vec<usize> = (j + 1..k)
            .filter(|&p| ordered[p].1.abs() >= t * skipped_mag)
            .collect();
        if eligible.len() < need {
            continue;
        }
        let mut head: BTreeSet<Index> = ordered.iter().take(j).map(|&(i, _)| i).collect();
        choose(&eligible, need, 0, &mut Vec::new(), &mut |picks| {
            let mut a = head.clone();
            for &p in picks {
                a.insert(ordered[p].0);
            }
            if is_greedy_set(x, &a, t) {
                push_unique(&mut out, a);
            }
        });
        head.clear();
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn push_unique(out: &mut Vec<BTreeSet<Index>>, a: BTreeSet<Index>) {
    if !out.contains(&a) {
        out.push(a);
    }
}

fn choose<F: FnMut(&[usize])>(
    pool: &[usize],
    need: usize,
    from: usize,
    acc: &mut Vec<usize>,
    f: &mut F,
) {
    if acc.len() == need {
        f(acc);
        return;
    }
    if pool.len() - from < need - acc.len() {
        return;
    }
    for p in from..pool.len() {
        acc.push(pool[p]);
        choose(pool, need, p + 1, acc, f);
        acc.pop();
    }
}

/// Searches for an s-greedy superset B of A whose coefficients all satisfy
/// |x_j| >= s^2 * min_{i in A} |x_i|, accepted by the caller's predicate.
///
/// Candidates are A joined with the top-k coefficients, k increasing, so the
/// first acceptable candidate is the smallest such superset.
pub fn greedy_superset_s2<F: FnMut(&BTreeSet<Index>) -> bool>(
    x: &SparseVector,
    a: &BTreeSet<Index>,
    s: f64,
    mut accept: F,
) -> Result<BTreeSet<Index>> {
    if a.is_empty() {
        return Err(Error::Contract("A must be nonempty".into()));
    }
    if !a.iter().all(|i| x.get(*i) != 0.0) {
        return Err(Error::Contract("A must be a subset of supp(x)".into()));
    }
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::Contract(format!("s must be in (0, 1], got {s}")));
    }
    let floor = s * s * x.min_abs_over(a);
    let ordered = x.support_by_magnitude();
    for k in 0..=ordered.len() {
        let mut b = a.clone();
        for &(i, _) in ordered.iter().take(k) {
            b.insert(i);
        }
        if x.min_abs_over(&b) >= floor && is_greedy_set(x, &b, s) && accept(&b) {
            return Ok(b);
        }
    }
    Err(Error::Budget(
        "no s-greedy superset satisfying the predicate within the support".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v431() -> SparseVector {
        SparseVector::from_entries([(1, 4.0), (2, 3.0), (3, 1.0)])
    }

    fn sets(v: Vec<Vec<Index>>) -> Vec<BTreeSet<Index>> {
        v.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    #[test]
    fn project_examples() {
        let x = SparseVector::from_entries([(1, 3.0), (2, -5.0), (3, 2.0)]);
        let p = project(&x, &[2u128].into_iter().collect());
        assert_eq!(p, SparseVector::from_entries([(2, -5.0)]));
        assert!(project(&x, &BTreeSet::new()).is_zero());
        let full = project(&v431(), &[1u128, 2, 3, 99].into_iter().collect());
        assert_eq!(full, v431());
    }

    #[test]
    fn natural_greedy_ties_and_padding() {
        let x = SparseVector::from_entries([(1, 3.0), (2, -5.0), (3, 2.0)]);
        assert_eq!(natural_greedy_set(&x, 1), [2u128].into_iter().collect());
        let tie = SparseVector::from_entries([(1, 1.0), (2, 1.0)]);
        assert_eq!(natural_greedy_set(&tie, 1), [1u128].into_iter().collect());
        assert_eq!(natural_greedy_set(&v431(), 2), [1u128, 2].into_iter().collect());
        // Padding: support {1,2} + two smallest unused indices {3,4}.
        assert_eq!(
            natural_greedy_set(&tie, 4),
            [1u128, 2, 3, 4].into_iter().collect()
        );
    }

    #[test]
    fn is_greedy_examples() {
        assert!(is_greedy_set(&v431(), &[2u128].into_iter().collect(), 0.5));
        assert!(!is_greedy_set(&v431(), &[3u128].into_iter().collect(), 1.0));
        assert!(is_greedy_set(&v431(), &[1u128, 2, 3].into_iter().collect(), 1.0));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_greedy_sets(&v431(), 1, 0.5).unwrap(),
            sets(vec![vec![1], vec![2]])
        );
        let tie = SparseVector::from_entries([(1, 1.0), (2, 1.0)]);
        assert_eq!(
            enumerate_greedy_sets(&tie, 1, 1.0).unwrap(),
            sets(vec![vec![1], vec![2]])
        );
        assert_eq!(
            enumerate_greedy_sets(&v431(), 2, 1.0).unwrap(),
            sets(vec![vec![1, 2]])
        );
    }

    #[test]
    fn enumerate_matches_brute_force_small() {
        let x = SparseVector::from_entries([(1, 2.0), (2, -2.0), (3, 1.0), (4, 0.5)]);
        for m in 0..=4usize {
            for t in [0.3, 0.5, 1.0] {
                let fast = enumerate_greedy_sets(&x, m, t).unwrap();
                let brute = brute_force(&x, m, t);
                assert_eq!(fast, brute, "m={m} t={t}");
            }
        }
    }

    fn brute_force(x: &SparseVector, m: usize, t: f64) -> Vec<BTreeSet<Index>> {
        let supp: Vec<Index> = x.support().into_iter().collect();
        let mut out = Vec::new();
        let n = supp.len();
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize != m {
                continue;
            }
            let a: BTreeSet<Index> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| supp[i]).collect();
            if is_greedy_set(x, &a, t) {
                out.push(a);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn oversized_m_is_domain_error() {
        assert!(matches!(
            enumerate_greedy_sets(&v431(), 4, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn superset_examples() {
        let b = greedy_superset_s2(&v431(), &[3u128].into_iter().collect(), 1.0, |_| true).unwrap();
        assert_eq!(b, [1u128, 2, 3].into_iter().collect());
        let b = greedy_superset_s2(&v431(), &[2u128].into_iter().collect(), 0.5, |_| true).unwrap();
        assert_eq!(b, [2u128].into_iter().collect());
        // Natural greedy top set stays valid under accept-all.
        let top = natural_greedy_set(&v431(), 1);
        let b = greedy_superset_s2(&v431(), &top, 1.0, |_| true).unwrap();
        assert!(b.is_superset(&top));
        assert!(is_greedy_set(&v431(), &b, 1.0));
    }
}
