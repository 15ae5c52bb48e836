//! Rational parametrizations for sampling connected arcs.
//!
//! A finite sample never certifies connectedness; these helpers only make it
//! easy to draw samples that honestly lie on one connected curve.

use num_traits::One;

use crate::arith::{int, Point, Rational};

/// Point of the unit circle via the tangent half-angle substitution:
/// `((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`. `t = 0` gives `(1, 0)`; `(-1, 0)`
/// is the limit `t -> infinity` and is not produced.
pub fn circle_point(t: &Rational) -> Point {
    let t2 = t * t;
    let d = Rational::one() + &t2;
    Point::new(vec![(Rational::one() - &t2) / &d, (t * int(2)) / d])
}

pub fn circle_arc(params: &[Rational]) -> Vec<Point> {
    params.iter().map(circle_point).collect()
}

/// `origin + t * direction` for each `t`.
pub fn line_points(origin: &Point, direction: &Point, params: &[Rational]) -> Vec<Point> {
    params
        .iter()
        .map(|t| origin.offset(direction, t).expect("matching dimensions"))
        .collect()
}

/// `k` evenly spaced parameters `lo + (hi - lo) * i / (k + 1)`, strictly
/// inside `(lo, hi)`.
pub fn interior_params(lo: &Rational, hi: &Rational, k: usize) -> Vec<Rational> {
    (1..=k)
        .map(|i| lo + (hi - lo) * Rational::new((i as i64).into(), ((k + 1) as i64).into()))
        .collect()
}
