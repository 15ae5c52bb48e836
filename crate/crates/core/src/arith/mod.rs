//! Exact rational and sparse multivariate polynomial arithmetic.

mod gcd;
mod poly;
mod rational;

pub(crate) use gcd::is_unit;
pub use gcd::{content_and_primitive, is_squarefree, poly_gcd, squarefree_part, yun_squarefree};
pub use poly::{ExponentVector, Point, Polynomial};
pub(crate) use rational::primitive_scale;
pub use rational::{dyadic, format_rational, int, pow, rat, Rational};
