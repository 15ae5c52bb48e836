//! Multivariate gcd by recursive primitive PRS, content/primitive split and
//! Yun's squarefree decomposition.

use super::poly::Polynomial;
use crate::error::{check_dims, Error, Result};

/// Greatest common divisor, normalized (coprime integer coefficients,
/// positive lex-leading coefficient). `gcd(p, 0)` is `p` normalized.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    check_dims(p.num_vars(), q.num_vars())?;
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(gcd_rec(p, q).normalized())
}

fn gcd_rec(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let n = p.num_vars();
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(n);
    }
    // Main variable: the first one occurring in either operand.
    let var = (0..n)
        .find(|&i| p.contains_var(i) || q.contains_var(i))
        .expect("non-constant operand");
    match (p.contains_var(var), q.contains_var(var)) {
        (true, false) => gcd_rec(&content_in(p, var), q),
        (false, true) => gcd_rec(p, &content_in(q, var)),
        _ => {
            let cp = content_in(p, var);
            let cq = content_in(q, var);
            let c = gcd_rec(&cp, &cq);
            let mut a = p.div_exact(&cp).expect("content divides");
            let mut b = q.div_exact(&cq).expect("content divides");
            if a.degree_in(var) < b.degree_in(var) {
                std::mem::swap(&mut a, &mut b);
            }
            // Primitive PRS.
            while !b.is_zero() && b.contains_var(var) {
                let r = a.pseudo_remainder(&b, var);
                a = b;
                b = if r.is_zero() {
                    r
                } else {
                    primitive_in(&r, var)
                };
            }
            let g = if b.is_zero() {
                primitive_in(&a, var)
            } else {
                // Nonzero remainder free of `var`: the primitive parts are coprime.
                Polynomial::one(n)
            };
            (&c * &g).normalized()
        }
    }
}

/// Content with respect to `x_var`: gcd of the coefficients (normalized).
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.num_vars());
    for coeff in p.coefficients_in(var).into_values() {
        acc = gcd_rec(&acc, &coeff);
        if acc.is_constant() {
            return Polynomial::one(p.num_vars());
        }
    }
    acc
}

fn primitive_in(p: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").normalized()
}

/// Splits `p`, viewed as univariate in `x_main_var`, into its content (a
/// normalized polynomial free of the main variable) and primitive part, with
/// `content * primitive == p` exactly. Rational scalars are units, so the
/// content of `2y^2` is `1`.
pub fn content_and_primitive(p: &Polynomial, main_var: usize) -> Result<(Polynomial, Polynomial)> {
    if main_var >= p.num_vars() {
        return Err(Error::VariableIndex {
            index: main_var,
            num_vars: p.num_vars(),
        });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = content_in(p, main_var);
    let primitive = p.div_exact(&content).expect("content divides");
    Ok((content, primitive))
}

/// Squarefree decomposition of a univariate polynomial (Yun). Returns
/// normalized, pairwise coprime, squarefree factors with their
/// multiplicities, ordered by multiplicity. The product of `f^m` equals `p`
/// up to a nonzero scalar; constants decompose to the empty list.
pub fn yun_squarefree(p: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let Some(var) = p.univariate_index()? else {
        return Ok(Vec::new());
    };
    let dp = p.partial_derivative(var)?;
    let a0 = gcd_rec(p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.partial_derivative(var)?;
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd_rec(&b, &d);
        let next_b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &next_b.partial_derivative(var)?;
        if !a.is_constant() {
            out.push((a.normalized(), i));
        }
        b = next_b;
        i += 1;
    }
    Ok(out)
}

/// `p / gcd(p, p')` normalized, for univariate `p`.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial> {
    let factors = yun_squarefree(p)?;
    Ok(factors
        .into_iter()
        .fold(Polynomial::one(p.num_vars()), |acc, (f, _)| &acc * &f)
        .normalized())
}

/// `true` if the univariate `p` has no repeated factor.
pub fn is_squarefree(p: &Polynomial) -> Result<bool> {
    Ok(yun_squarefree(p)?.iter().all(|(_, m)| *m == 1))
}

pub(crate) fn is_unit(p: &Polynomial) -> bool {
    p.is_constant() && !p.is_zero()
}
