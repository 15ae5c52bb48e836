//! Exact Lazard valuations of multivariate rational polynomials.
//!
//! The crate computes the Lazard valuation `v_a(f)` (the lex-least exponent
//! of a nonzero term of `f` expanded about `a`) and the order `ord_a(f)`,
//! runs the Lazard evaluation process over a rational sample point, builds
//! the Lazard projection set of a basis, and provides finite-sample checkers
//! for valuation-invariance, order-invariance and Lazard delineability.
//!
//! All arithmetic is exact over the rationals.

pub mod arith;
pub mod demos;
mod error;
pub mod invariance;
pub mod lazard_eval;
pub mod parser;
pub mod projection;
pub mod suites;
pub mod valuation;

pub use arith::{Point, Polynomial, Rational};
pub use error::{Error, Result};
