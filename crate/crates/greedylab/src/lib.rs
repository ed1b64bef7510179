//! greedylab: a laboratory for greedy approximation in Banach sequence
//! spaces.
//!
//! The crate builds explicit weighted sequence-space norms as a small
//! composable AST ([`norms::NormSpec`]), evaluates them exactly on
//! finite-support vectors, and provides:
//!
//! - greedy-set machinery (thresholding sets, enumeration, s^2-greedy
//!   supersets) and Chebyshev best approximation under support constraints
//!   with certified optimality gaps ([`greedy`], [`cheb`]);
//! - plain / projectional / weighted best m-term approximation errors
//!   ([`approx`]);
//! - witness-certified lower-bound estimators for Lebesgue-type and
//!   democracy-type parameters, plus an exact calculator for closed-form
//!   constant bounds ([`params`], [`bounds`]);
//! - the conditional-basis example constructions with their inequality
//!   certificates ([`presets`]);
//! - a deterministic batch/report front-end ([`report`], [`cli`]).
//!
//! Start with the runnable examples in `examples/` — there is one per major
//! capability.

pub mod approx;
pub mod bounds;
pub mod cheb;
pub mod cli;
pub mod dual;
pub mod error;
pub mod greedy;
pub mod index;
pub mod json;
pub mod norms;
pub mod params;
pub mod presets;
pub mod report;
pub mod rules;
pub mod sparse;
pub mod weights;

pub use error::{Error, Result};
pub use index::Index;
pub use norms::NormSpec;
pub use rules::Enclosure;
pub use sparse::SparseVector;
pub use weights::Weight;
