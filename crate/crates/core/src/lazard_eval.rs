//! The Lazard evaluation process: for `i = 1..n-1`, divide out the exact
//! power of `(x_i - alpha_i)` and then substitute `x_i = alpha_i`.

use serde::Serialize;

use crate::arith::{Point, Polynomial, Rational};
use crate::error::{check_dims, Error, Result};
use crate::valuation::lazard_valuation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LazardEvaluation {
    /// Polynomial in `x_n` only, embedded in the ambient variable space.
    pub residual: Polynomial,
    /// `(v_1, ..., v_{n-1})`, the Lazard valuation of `f` on `alpha`.
    pub prefix_valuation: Vec<u32>,
}

impl LazardEvaluation {
    /// `f(alpha, x_n)` vanished identically, i.e. some `v_i > 0`.
    pub fn nullified(&self) -> bool {
        self.prefix_valuation.iter().any(|&v| v > 0)
    }

    /// Dense coefficients of the residual in `x_n`, lowest power first.
    pub fn residual_coefficients(&self) -> Vec<Rational> {
        let n = self.residual.num_vars();
        self.residual
            .to_dense(n - 1)
            .expect("residual only mentions the last variable")
    }
}

fn check_args(f: &Polynomial, alpha: &Point) -> Result<()> {
    if f.num_vars() < 2 {
        return Err(Error::TooFewVariables {
            min: 2,
            found: f.num_vars(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_dims(f.num_vars() - 1, alpha.dim())
}

pub fn lazard_evaluate(f: &Polynomial, alpha: &Point) -> Result<LazardEvaluation> {
    check_args(f, alpha)?;
    let mut g = f.clone();
    let mut prefix = Vec::with_capacity(alpha.dim());
    for (i, a) in alpha.coords().iter().enumerate() {
        let mut v = 0;
        while let Some(q) = g.divide_by_linear(i, a)? {
            g = q;
            v += 1;
        }
        prefix.push(v);
        g = g.evaluate_at_var(i, a)?;
        if g.is_zero() {
            return Err(Error::Inconsistent(format!(
                "residual vanished after substituting x{} = {a}",
                i + 1
            )));
        }
    }
    Ok(LazardEvaluation {
        residual: g,
        prefix_valuation: prefix,
    })
}

/// `true` iff `f(alpha, x_n)` is identically zero. Computed by direct
/// substitution and by the prefix criterion; disagreement is reported as an
/// error.
pub fn is_nullified(f: &Polynomial, alpha: &Point) -> Result<bool> {
    check_args(f, alpha)?;
    let by_prefix = lazard_evaluate(f, alpha)?.nullified();
    let by_substitution = substitute_prefix(f, alpha)?.is_zero();
    if by_prefix != by_substitution {
        return Err(Error::Inconsistent(format!(
            "nullification by substitution = {by_substitution}, by prefix = {by_prefix}"
        )));
    }
    Ok(by_substitution)
}

/// `f(alpha, x_n)`.
pub fn substitute_prefix(f: &Polynomial, alpha: &Point) -> Result<Polynomial> {
    check_dims(f.num_vars().saturating_sub(1), alpha.dim())?;
    let mut g = f.clone();
    for (i, a) in alpha.coords().iter().enumerate() {
        g = g.evaluate_at_var(i, a)?;
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixReport {
    pub prefix_valuation: Vec<u32>,
    pub full_valuation: Vec<u32>,
    pub passed: bool,
}

/// Compares the Lazard-evaluation prefix with the first `n-1` coordinates of
/// `v_{(alpha, a_n)}(f)`.
pub fn prefix_consistency_check(
    f: &Polynomial,
    alpha: &Point,
    a_n: &Rational,
) -> Result<PrefixReport> {
    let eval = lazard_evaluate(f, alpha)?;
    let full = lazard_valuation(f, &alpha.extended(a_n.clone()))?;
    let passed = full.prefix(alpha.dim()) == eval.prefix_valuation.as_slice();
    Ok(PrefixReport {
        prefix_valuation: eval.prefix_valuation,
        full_valuation: full.components().to_vec(),
        passed,
    })
}
