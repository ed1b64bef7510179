//! Positive weight sequences and their finite-set measures.
//!
//! A weight assigns a positive real to every index n >= 1. The `Combined`
//! kind interleaves two weights: odd indices 2n-1 read the first weight at n,
//! even indices 2n read the second at n. This is the weight attached to the
//! interleaved direct sum of two weighted spaces.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{index_to_f64, Index};

/// A positive sequence generator, evaluated pointwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Weight {
    /// w_n = c for a fixed c > 0.
    Constant(f64),
    /// w_n = n^{-1/2} * ln(n+1). Tends to 0, is not summable.
    FormulaW1,
    /// Explicitly listed head values; indices past the list take the
    /// constant `tail` value. All values must be positive.
    Explicit { values: Vec<f64>, tail: f64 },
    /// Interleaving: w_{2n-1} = left_n, w_{2n} = right_n.
    Combined(Box<Weight>, Box<Weight>),
}

impl Weight {
    /// Checks the positivity invariants that make this a weight.
    pub fn validate(&self) -> Result<()> {
        match self {
            Weight::Constant(c) => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::Contract(format!(
                        "constant weight must be positive and finite, got {c}"
                    )));
                }
            }
            Weight::FormulaW1 => {}
            Weight::Explicit { values, tail } => {
                if values.iter().chain([tail]).any(|v| !(v.is_finite() && *v > 0.0)) {
                    return Err(Error::Contract(
                        "explicit weight values must all be positive and finite".into(),
                    ));
                }
            }
            Weight::Combined(l, r) => {
                l.validate()?;
                r.validate()?;
            }
        }
        Ok(())
    }

    /// w_n. Index 0 is outside the domain.
    pub fn weight_at(&self, n: Index) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("weight index must be >= 1".into()));
        }
        Ok(self.at_unchecked(n))
    }

    fn at_unchecked(&self, n: Index) -> f64 {
        match self {
            Weight::Constant(c) => *c,
            Weight::FormulaW1 => formula_w1(n),
            Weight::Explicit { values, tail } => {
                if n as usize as Index == n && (n as usize) <= values.len() {
                    values[n as usize - 1]
                } else {
                    *tail
                }
            }
            Weight::Combined(left, right) => {
                // Odd 2k-1 -> left_k, even 2k -> right_k.
                if n % 2 == 1 {
                    left.at_unchecked((n + 1) / 2)
                } else {
                    right.at_unchecked(n / 2)
                }
            }
        }
    }

    /// w(A) = sum of w_i over the finite set A; 0 for the empty set.
    pub fn weight_measure(&self, a: &BTreeSet<Index>) -> Result<f64> {
        let mut s = 0.0;
        for &i in a {
            s += self.weight_at(i)?;
        }
        Ok(s)
    }

    /// Whether the weight tends to 0 along n, decided by kind: the
    /// formula weight does; constant and explicit-with-constant-tail do not;
    /// a combined weight does iff both components do.
    pub fn tends_to_zero(&self) -> bool {
        match self {
            Weight::Constant(_) => false,
            Weight::FormulaW1 => true,
            Weight::Explicit { .. } => false,
            Weight::Combined(l, r) => l.tends_to_zero() && r.tends_to_zero(),
        }
    }
}

/// w^{(1)}_n = n^{-1/2} ln(n+1).
pub fn formula_w1(n: Index) -> f64 {
    let x = index_to_f64(n);
    (x + 1.0).ln() / x.sqrt()
}
