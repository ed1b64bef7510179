//! Basis indices. Indices are 1-based unsigned integers up to 2^127 - 1:
//! the conditional-basis constructions need interval endpoints that grow
//! double-exponentially, far past u64 range.

/// A basis index (1-based).
pub type Index = u128;

/// Largest representable index.
pub const MAX_INDEX: Index = (1 << 127) - 1;

/// Lossy conversion to f64 for analytic formulas (logs, powers). Relative
/// error is at most one ulp, which is far below every tolerance used here.
pub fn index_to_f64(n: Index) -> f64 {
    n as f64
}
