//! Lazard valuation and order of a polynomial at a rational point.
//!
//! Two independent routes compute the valuation: the primary one expands `f`
//! about `a` with a single Taylor shift and takes the lex-least exponent; the
//! other enumerates mixed partial derivatives in lex order and evaluates them
//! at `a`. They must always agree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::arith::{Point, Polynomial};
use crate::error::{check_dims, Error, Result};

/// Element of N^n under the lexicographic order (first coordinate most
/// significant). The derived `Ord` is exactly that order for equal lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuationVector(Vec<u32>);

impl ValuationVector {
    pub fn new(components: Vec<u32>) -> Self {
        Self(components)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn prefix(&self, k: usize) -> &[u32] {
        &self.0[..k]
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dims(self.len(), other.len())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl Add for &ValuationVector {
    type Output = ValuationVector;

    fn add(self, rhs: &ValuationVector) -> ValuationVector {
        self.checked_add(rhs).expect("valuation length mismatch")
    }
}

impl fmt::Display for ValuationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for ValuationVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Order of vanishing: total degree of the lowest-degree term of the
/// expansion about the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrderValue(pub u32);

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `v <_l w` iff at the first differing index `v_i < w_i`.
pub fn lex_compare(v: &ValuationVector, w: &ValuationVector) -> Result<Ordering> {
    check_dims(v.len(), w.len())?;
    Ok(v.0.cmp(&w.0))
}

fn check_args(f: &Polynomial, a: &Point) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_dims(f.num_vars(), a.dim())
}

/// Lazard valuation `v_a(f)`: the lex-least exponent of a nonzero term of `f`
/// expanded about `a`.
pub fn lazard_valuation(f: &Polynomial, a: &Point) -> Result<ValuationVector> {
    check_args(f, a)?;
    let shifted = f.taylor_shift(a)?;
    let (e, _) = shifted
        .trailing_term()
        .expect("shift of nonzero is nonzero");
    Ok(ValuationVector(e.to_vec()))
}

/// Lazard valuation by enumerating `v` in lex order, each `v_i` bounded by
/// `deg_{x_i} f`, returning the first `v` whose mixed partial derivative is
/// nonzero at `a`. Kept as an independent oracle for [`lazard_valuation`].
pub fn lazard_valuation_by_derivatives(f: &Polynomial, a: &Point) -> Result<ValuationVector> {
    check_args(f, a)?;
    let bounds: Vec<u32> = (0..f.num_vars())
        .map(|i| f.degree_in(i).unwrap_or(0))
        .collect();
    let mut v = Vec::with_capacity(f.num_vars());
    let found = first_nonvanishing(f, a, &bounds, &mut v)?;
    debug_assert!(found, "some derivative of a nonzero polynomial is nonzero");
    Ok(ValuationVector(v))
}

// Depth-first over coordinates in lex order; derivatives are taken
// incrementally so `g` is always d^{v_1..v_k} f / dx_1^{v_1}..dx_k^{v_k}.
fn first_nonvanishing(g: &Polynomial, a: &Point, bounds: &[u32], v: &mut Vec<u32>) -> Result<bool> {
    let i = v.len();
    if i == bounds.len() {
        return Ok(!g.evaluate(a)?.is_zero());
    }
    let mut d = g.clone();
    for k in 0..=bounds[i] {
        v.push(k);
        if first_nonvanishing(&d, a, bounds, v)? {
            return Ok(true);
        }
        v.pop();
        d = d.partial_derivative(i)?;
        if d.is_zero() {
            break;
        }
    }
    Ok(false)
}

/// `ord_a(f)`: minimum total degree among terms of the expansion about `a`.
pub fn order_at(f: &Polynomial, a: &Point) -> Result<OrderValue> {
    check_args(f, a)?;
    let shifted = f.taylor_shift(a)?;
    Ok(OrderValue(
        shifted
            .terms()
            .map(|(e, _)| e.total_degree())
            .min()
            .expect("nonzero"),
    ))
}

/// Outcome of the ultrametric inequality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SumAxiom {
    /// `f + g = 0`, so there is nothing to check.
    Vacuous,
    Checked {
        v_sum: ValuationVector,
        min: ValuationVector,
        holds: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub v_f: ValuationVector,
    pub v_g: ValuationVector,
    pub v_product: ValuationVector,
    pub product_holds: bool,
    pub sum: SumAxiom,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.product_holds && !matches!(self.sum, SumAxiom::Checked { holds: false, .. })
    }
}

/// Checks `v_a(fg) = v_a(f) + v_a(g)` and `v_a(f + g) >= min(v_a(f), v_a(g))`.
pub fn valuation_sum_check(f: &Polynomial, g: &Polynomial, a: &Point) -> Result<AxiomReport> {
    let v_f = lazard_valuation(f, a)?;
    let v_g = lazard_valuation(g, a)?;
    let v_product = lazard_valuation(&f.checked_mul(g)?, a)?;
    let product_holds = v_product == &v_f + &v_g;
    let s = f.checked_add(g)?;
    let sum = if s.is_zero() {
        SumAxiom::Vacuous
    } else {
        let v_sum = lazard_valuation(&s, a)?;
        let min = v_f.clone().min(v_g.clone());
        SumAxiom::Checked {
            holds: v_sum >= min,
            v_sum,
            min,
        }
    };
    Ok(AxiomReport {
        v_f,
        v_g,
        v_product,
        product_holds,
        sum,
    })
}
