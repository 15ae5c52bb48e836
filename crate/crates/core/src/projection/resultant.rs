use crate::arith::Polynomial;
use crate::error::{check_dims, Error, Result};

fn check_operand(f: &Polynomial, main_var: usize) -> Result<u32> {
    if main_var >= f.num_vars() {
        return Err(Error::VariableIndex {
            index: main_var,
            num_vars: f.num_vars(),
        });
    }
    let d = f.degree_in(main_var).ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::DegreeTooLow {
            required: 1,
            found: 0,
        });
    }
    Ok(d)
}

/// Resultant of `f` and `g` as polynomials in `x_main_var` (the determinant
/// of their Sylvester matrix), computed with the subresultant PRS.
pub fn resultant(f: &Polynomial, g: &Polynomial, main_var: usize) -> Result<Polynomial> {
    check_dims(f.num_vars(), g.num_vars())?;
    let df = check_operand(f, main_var)?;
    let dg = check_operand(g, main_var)?;
    let n = f.num_vars();
    let deg = |p: &Polynomial| p.degree_in(main_var).unwrap_or(0);
    let lc = |p: &Polynomial| p.coefficient_in(main_var, deg(p));

    let (mut a, mut b) = (f.clone(), g.clone());
    let mut negate = false;
    if df < dg {
        std::mem::swap(&mut a, &mut b);
        negate = df % 2 == 1 && dg % 2 == 1;
    }
    let mut g_acc = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_remainder(&b, main_var);
        if r.is_zero() {
            return Ok(Polynomial::zero(n));
        }
        let divisor = &g_acc * &h.pow(delta);
        a = b;
        b = r
            .div_exact(&divisor)
            .expect("subresultant division is exact");
        g_acc = lc(&a);
        if delta > 0 {
            h = g_acc
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact");
        }
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a);
    let res = b
        .pow(da)
        .div_exact(&h.pow(da - 1))
        .expect("subresultant division is exact");
    Ok(if negate { -res } else { res })
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n) in `x_main_var`:
/// n shifted rows of f's coefficients then m shifted rows of g's, highest
/// power first.
pub fn sylvester_matrix(
    f: &Polynomial,
    g: &Polynomial,
    main_var: usize,
) -> Result<Vec<Vec<Polynomial>>> {
    check_dims(f.num_vars(), g.num_vars())?;
    let m = check_operand(f, main_var)? as usize;
    let n = check_operand(g, main_var)? as usize;
    let size = m + n;
    let zero = Polynomial::zero(f.num_vars());
    let mut rows = Vec::with_capacity(size);
    for (p, deg, count) in [(f, m, n), (g, n, m)] {
        let coeffs = p.coefficients_in(main_var);
        for shift in 0..count {
            let mut row = vec![zero.clone(); size];
            for k in 0..=deg {
                if let Some(c) = coeffs.get(&((deg - k) as u32)) {
                    row[shift + k] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Determinant by Bareiss fraction-free elimination (all divisions exact).
pub fn bareiss_determinant(mut m: Vec<Vec<Polynomial>>, num_vars: usize) -> Polynomial {
    let size = m.len();
    if size == 0 {
        return Polynomial::one(num_vars);
    }
    let mut negate = false;
    let mut prev = Polynomial::one(num_vars);
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..size).find(|&i| !m[i][k].is_zero()) else {
                return Polynomial::zero(num_vars);
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant as the Bareiss determinant of the Sylvester matrix. Independent
/// of [`resultant`]; used to cross-check it.
pub fn sylvester_resultant(f: &Polynomial, g: &Polynomial, main_var: usize) -> Result<Polynomial> {
    Ok(bareiss_determinant(
        sylvester_matrix(f, g, main_var)?,
        f.num_vars(),
    ))
}

/// `res(f, df/dx_main_var)`, unnormalized. Requires degree at least 2.
pub fn discriminant(f: &Polynomial, main_var: usize) -> Result<Polynomial> {
    let d = check_operand(f, main_var).map_err(|e| match e {
        Error::DegreeTooLow { found, .. } => Error::DegreeTooLow { required: 2, found },
        other => other,
    })?;
    if d < 2 {
        return Err(Error::DegreeTooLow {
            required: 2,
            found: d,
        });
    }
    resultant(f, &f.partial_derivative(main_var)?, main_var)
}
