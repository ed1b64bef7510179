//! Registered coefficient rules and certified sums over long index ranges.
//!
//! Coefficient rules are the functionals' term weights (a small registered
//! set plus user tabulations, so serialized specs stay reproducible).
//! Monotone rules additionally carry closed-form integral bounds so sums over
//! ranges far too long to enumerate can be enclosed by an integral sandwich:
//! for f decreasing on [a,b],
//!   integral_a^{b+1} f  <=  sum_{n=a}^{b} f(n)  <=  f(a) + integral_a^{b} f.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{index_to_f64, Index};

/// Term-coefficient rule for prefix/interval functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CoefficientRule {
    /// c_n = n^{-3/4}.
    InvPow34,
    /// User-supplied table; indices not listed have coefficient 0.
    Tabulated(BTreeMap<Index, f64>),
}

impl CoefficientRule {
    pub fn eval(&self, n: Index) -> f64 {
        match self {
            CoefficientRule::InvPow34 => index_to_f64(n).powf(-0.75),
            CoefficientRule::Tabulated(t) => t.get(&n).copied().unwrap_or(0.0),
        }
    }
}

/// Positive rules that are monotone decreasing on a known range, with
/// integral bounds available in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonotoneRule {
    /// f(n) = n^{-3/4}; decreasing on all n >= 1.
    InvPow34,
    /// f(n) = n^{-1/2} ln(n+1); decreasing only for n >= 4.
    W1,
    /// f(n) = n^{-1} / ln(n+1); decreasing on all n >= 1.
    InvNLog,
}

impl MonotoneRule {
    pub fn eval(&self, n: Index) -> f64 {
        let x = index_to_f64(n);
        match self {
            MonotoneRule::InvPow34 => x.powf(-0.75),
            MonotoneRule::W1 => (x + 1.0).ln() / x.sqrt(),
            MonotoneRule::InvNLog => 1.0 / (x * (x + 1.0).ln()),
        }
    }

    /// First index from which the rule is decreasing.
    fn decreasing_from(&self) -> Index {
        match self {
            MonotoneRule::InvPow34 | MonotoneRule::InvNLog => 1,
            // (n^{-1/2} ln(n+1))' changes sign between 3 and 4.
            MonotoneRule::W1 => 4,
        }
    }

    /// A lower bound for integral_a^b f(x) dx (a, b as reals).
    fn integral_lower(&self, a: f64, b: f64) -> f64 {
        match self {
            MonotoneRule::InvPow34 => 4.0 * (b.powf(0.25) - a.powf(0.25)),
            MonotoneRule::W1 => w1_antideriv(b) - w1_antideriv(a),
            // 1/(x ln(x+1)) >= 1/((x+1) ln(x+1)), whose antiderivative is
            // ln ln (x+1).
            MonotoneRule::InvNLog => (b + 1.0).ln().ln() - (a + 1.0).ln().ln(),
        }
    }

    /// An upper bound for integral_a^b f(x) dx (requires a >= 2 for InvNLog).
    fn integral_upper(&self, a: f64, b: f64) -> f64 {
        match self {
            MonotoneRule::InvPow34 => 4.0 * (b.powf(0.25) - a.powf(0.25)),
            MonotoneRule::W1 => w1_antideriv(b) - w1_antideriv(a),
            // 1/(x ln(x+1)) <= 1/(x ln x) for x >= 1; antiderivative ln ln x,
            // valid on [a,b] with a >= 2 so that ln x > 0.
            MonotoneRule::InvNLog => {
                debug_assert!(a >= 2.0);
                b.ln().ln() - a.ln().ln()
            }
        }
    }
}

/// Exact antiderivative of x^{-1/2} ln(x+1):
///   2 sqrt(x) ln(x+1) - 4 sqrt(x) + 4 arctan(sqrt(x)).
fn w1_antideriv(x: f64) -> f64 {
    let s = x.sqrt();
    2.0 * s * (x + 1.0).ln() - 4.0 * s + 4.0 * s.atan()
}

/// A certified two-sided enclosure of a real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo.is_finite() && hi.is_finite() && lo <= hi, "bad enclosure [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Self::new(v, v)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Ranges at most this long are summed term by term (enclosure width 0).
pub const DIRECT_SUM_LIMIT: u128 = 1_000_000;

/// Relative padding applied to sandwich bounds to absorb binary64 rounding
/// in the closed-form antiderivatives.
const PAD: f64 = 1e-12;

/// Certified enclosure of sum_{n=a}^{b} f(n) for a monotone decreasing rule.
///
/// Short ranges (<= 10^6 terms) are summed directly; longer ranges use the
/// integral sandwich with closed-form antiderivative bounds.
pub fn interval_sum_certified(rule: MonotoneRule, a: Index, b: Index) -> Result<Enclosure> {
    if a < 1 {
        return Err(Error::Domain("interval start must be >= 1".into()));
    }
    if a > b {
        return Err(Error::Domain(format!("empty range: a={a} > b={b}")));
    }
    if a < rule.decreasing_from() {
        return Err(Error::Contract(format!(
            "rule {rule:?} is not decreasing on [{a}, {b}] (decreasing from {})",
            rule.decreasing_from()
        )));
    }
    let len = b - a + 1;
    if len <= DIRECT_SUM_LIMIT {
        // Sum smallest terms first for slightly better rounding behavior.
        let mut s = 0.0;
        let mut n = b;
        loop {
            s += rule.eval(n);
            if n == a {
                break;
            }
            n -= 1;
        }
        return Ok(Enclosure::point(s));
    }

    let (af, bf) = (index_to_f64(a), index_to_f64(b));
    let lo = rule.integral_lower(af, bf + 1.0);
    let hi = rule.eval(a) + rule.integral_upper(af, bf);
    // Pad outward to cover floating-point rounding of the bounds themselves.
    let lo = (lo * (1.0 - PAD)).max(0.0);
    let hi = hi * (1.0 + PAD);
    Ok(Enclosure::new(lo, hi))
}
