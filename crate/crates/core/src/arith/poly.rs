use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::rational::{format_rational, pow, primitive_scale, Rational};
use crate::error::{check_dims, Error, Result};

/// Exponents of a monomial, one per variable in the fixed order `x1..xn`.
///
/// The derived `Ord` is the lexicographic order with `x1` most significant,
/// so a `BTreeMap` keyed by exponent vectors iterates terms lex-ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(num_vars: usize) -> Self {
        Self(vec![0; num_vars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn with(&self, index: usize, value: u32) -> Self {
        let mut e = self.0.clone();
        e[index] = value;
        Self(e)
    }

    fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl Deref for ExponentVector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

/// A rational point, either in k^n (valuations) or k^(n-1) (Lazard evaluation).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// `(self, last)`, a point one dimension up.
    pub fn extended(&self, last: Rational) -> Self {
        let mut c = self.0.clone();
        c.push(last);
        Self(c)
    }

    /// `self + t * direction`.
    pub fn offset(&self, direction: &Point, t: &Rational) -> Result<Self> {
        check_dims(self.dim(), direction.dim())?;
        Ok(Self(
            self.0
                .iter()
                .zip(&direction.0)
                .map(|(a, d)| a + d * t)
                .collect(),
        ))
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Canonical form: no stored coefficient is zero, so structural equality is
/// polynomial equality and the zero polynomial is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(ExponentVector::zero(num_vars), c);
        p
    }

    /// The variable `x_{index+1}` (indices are zero-based).
    pub fn var(num_vars: usize, index: usize) -> Result<Self> {
        check_index(index, num_vars)?;
        let mut p = Self::zero(num_vars);
        p.add_term(
            ExponentVector::zero(num_vars).with(index, 1),
            Rational::one(),
        );
        Ok(p)
    }

    /// `x_index - c`.
    pub fn linear(num_vars: usize, index: usize, c: &Rational) -> Result<Self> {
        Ok(&Self::var(num_vars, index)? - &Self::constant(num_vars, c.clone()))
    }

    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            check_dims(num_vars, e.len())?;
            p.add_term(ExponentVector(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.num_vars])
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&ExponentVector(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    /// Lex-greatest term.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Lex-least term.
    pub fn trailing_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next()
    }

    /// Degree in `x_index`; `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[index]).max()
    }

    pub fn min_degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[index]).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::total_degree).max()
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.terms.keys().any(|e| e[index] > 0)
    }

    /// Indices of the variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.num_vars)
            .filter(|&i| self.contains_var(i))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dims(self.num_vars, other.num_vars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_dims(self.num_vars, other.num_vars)?;
        // Multiply over the integers after clearing denominators.
        let (a, da) = self.integer_terms();
        let (b, db) = other.integer_terms();
        let mut acc: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (e1, c1) in &a {
            for (e2, c2) in &b {
                *acc.entry(e1.add(e2)).or_default() += c1 * c2;
            }
        }
        let denom = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, Rational::new(c, denom.clone())))
            .collect();
        Ok(Self {
            num_vars: self.num_vars,
            terms,
        })
    }

    /// Integer numerators over a common denominator.
    fn integer_terms(&self) -> (Vec<(&ExponentVector, BigInt)>, BigInt) {
        let denom = self.terms.values().fold(BigInt::one(), |l, c| {
            num_integer::Integer::lcm(&l, c.denom())
        });
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e, c.numer() * (&denom / c.denom())))
            .collect();
        (terms, denom)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The same polynomial in the first `num_vars` variables; every dropped
    /// variable must be absent.
    pub fn truncate_vars(&self, num_vars: usize) -> Result<Self> {
        if num_vars > self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: num_vars,
            });
        }
        if let Some(index) = (num_vars..self.num_vars).find(|&i| self.contains_var(i)) {
            return Err(Error::MentionsVariable { index });
        }
        Ok(Self {
            num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (ExponentVector(e[..num_vars].to_vec()), c.clone()))
                .collect(),
        })
    }

    /// Multiplies by `x_index^k`.
    pub fn mul_var_pow(&self, index: usize, k: u32) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.with(index, e[index] + k), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `x_index`.
    pub fn partial_derivative(&self, index: usize) -> Result<Self> {
        check_index(index, self.num_vars)?;
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            let d = e[index];
            if d > 0 {
                out.add_term(e.with(index, d - 1), c * Rational::from_integer(d.into()));
            }
        }
        Ok(out)
    }

    /// Substitutes `x_index = c`; the variable disappears but the ambient
    /// dimension is kept.
    pub fn evaluate_at_var(&self, index: usize, c: &Rational) -> Result<Self> {
        check_index(index, self.num_vars)?;
        let max = self.degree_in(index).unwrap_or(0);
        let powers = powers_of(c, max);
        let mut out = Self::zero(self.num_vars);
        for (e, coeff) in &self.terms {
            out.add_term(e.with(index, 0), coeff * &powers[e[index] as usize]);
        }
        Ok(out)
    }

    /// Full evaluation at a point of matching dimension.
    pub fn evaluate(&self, at: &Point) -> Result<Rational> {
        check_dims(self.num_vars, at.dim())?;
        let mut p = self.clone();
        for (i, c) in at.coords().iter().enumerate() {
            p = p.evaluate_at_var(i, c)?;
        }
        Ok(p.constant_term())
    }

    /// `q(x) = p(x + a)`: the coefficient of `x^v` in `q` is the coefficient of
    /// `(x - a)^v` in the expansion of `p` about `a`.
    pub fn taylor_shift(&self, a: &Point) -> Result<Self> {
        check_dims(self.num_vars, a.dim())?;
        let mut p = self.clone();
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let max = p.degree_in(i).unwrap_or(0);
            let powers = powers_of(ai, max);
            let binom = binomial_rows(max);
            let mut out = Self::zero(p.num_vars);
            for (e, c) in &p.terms {
                let d = e[i] as usize;
                for k in 0..=d {
                    let coeff = c * &powers[d - k] * &binom[d][k];
                    out.add_term(e.with(i, k as u32), coeff);
                }
            }
            p = out;
        }
        Ok(p)
    }

    /// Coefficients of `self` viewed as a polynomial in `x_index`: maps each
    /// power to a polynomial free of `x_index`.
    pub fn coefficients_in(&self, index: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e[index])
                .or_insert_with(|| Self::zero(self.num_vars))
                .add_term(e.with(index, 0), c.clone());
        }
        out
    }

    /// Coefficient of `x_index^k`, as a polynomial free of `x_index`.
    pub fn coefficient_in(&self, index: usize, k: u32) -> Polynomial {
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[index] == k {
                out.add_term(e.with(index, 0), c.clone());
            }
        }
        out
    }

    /// Exact quotient by `x_index - c`, or `None` if it does not divide.
    pub fn divide_by_linear(&self, index: usize, c: &Rational) -> Result<Option<Self>> {
        check_index(index, self.num_vars)?;
        let coeffs = self.coefficients_in(index);
        let Some(&deg) = coeffs.keys().next_back() else {
            return Ok(Some(self.clone()));
        };
        let zero = Self::zero(self.num_vars);
        // Synthetic division, highest power first.
        let mut quotient = Self::zero(self.num_vars);
        let mut carry = Self::zero(self.num_vars);
        for k in (0..=deg).rev() {
            let pk = coeffs.get(&k).unwrap_or(&zero);
            let next = &carry.scale(c) + pk;
            if k == 0 {
                return Ok(if next.is_zero() { Some(quotient) } else { None });
            }
            quotient = &quotient + &next.mul_var_pow(index, k - 1);
            carry = next;
        }
        unreachable!()
    }

    /// Largest `v` such that `(x_index - c)^v` divides `self`.
    pub fn divisibility_exponent(&self, index: usize, c: &Rational) -> Result<u32> {
        check_index(index, self.num_vars)?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut v = 0;
        let mut p = self.clone();
        while let Some(q) = p.divide_by_linear(index, c)? {
            v += 1;
            p = q;
        }
        Ok(v)
    }

    /// Exact multivariate division; `None` when `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.num_vars, divisor.num_vars, "dimension mismatch");
        let (lead_e, _) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(Self::zero(self.num_vars));
        }
        // Per-variable degree bound on the quotient guarantees termination.
        let bound: Vec<i64> = (0..self.num_vars)
            .map(|i| self.degree_in(i).unwrap() as i64 - divisor.degree_in(i).unwrap() as i64)
            .collect();
        if bound.iter().any(|&b| b < 0) {
            return None;
        }
        // Over the integers: with divisor = D / dd = cd * P / dd for primitive
        // P, Gauss's lemma makes S / P integral whenever it is exact.
        let (num, ds) = self.integer_terms();
        let (den, dd) = divisor.integer_terms();
        let cd = den
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| num_integer::Integer::gcd(&g, c));
        let prim: Vec<(&ExponentVector, BigInt)> =
            den.into_iter().map(|(e, c)| (e, c / &cd)).collect();
        let lead_c = &prim.last().expect("nonzero divisor").1;
        let mut rem: BTreeMap<ExponentVector, BigInt> =
            num.into_iter().map(|(e, c)| (e.clone(), c)).collect();
        let mut quot: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        while let Some((e, c)) = rem.iter().next_back() {
            if !lead_e.divides(e) {
                return None;
            }
            let m = e.sub(lead_e);
            if m.iter().zip(&bound).any(|(&mi, &b)| mi as i64 > b) {
                return None;
            }
            let (q, r) = num_integer::Integer::div_rem(c, lead_c);
            if !r.is_zero() {
                return None;
            }
            for (de, dc) in &prim {
                let key = de.add(&m);
                let entry = rem.entry(key.clone()).or_default();
                *entry -= dc * &q;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(m, q);
        }
        let scale = Rational::new(dd, ds * cd);
        Some(Self {
            num_vars: self.num_vars,
            terms: quot.into_iter().map(|(e, q)| (e, &scale * q)).collect(),
        })
    }

    /// Pseudo-remainder `prem(self, divisor)` in `x_index`:
    /// `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn pseudo_remainder(&self, divisor: &Self, index: usize) -> Self {
        let db = divisor.degree_in(index).expect("nonzero divisor");
        let Some(da) = self.degree_in(index) else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lc_b = divisor.coefficient_in(index, db);
        let mut r = self.clone();
        let mut steps = 0;
        while let Some(dr) = r.degree_in(index) {
            if dr < db {
                break;
            }
            let lc_r = r.coefficient_in(index, dr);
            r = &(&lc_b * &r) - &(&lc_r * &divisor.mul_var_pow(index, dr - db));
            steps += 1;
        }
        let missing = da - db + 1 - steps;
        &lc_b.pow(missing) * &r
    }

    /// The scalar associate with coprime integer coefficients and a positive
    /// lex-leading coefficient. Zero stays zero.
    pub fn normalized(&self) -> Self {
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        let mut s = primitive_scale(self.terms.values());
        if lc.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Dense coefficient list (lowest power first) of a polynomial that
    /// mentions no variable other than `x_index`.
    pub fn to_dense(&self, index: usize) -> Result<Vec<Rational>> {
        if self.variables().iter().any(|&v| v != index) {
            return Err(Error::NotUnivariate);
        }
        let deg = self.degree_in(index).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            out[e[index] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(num_vars: usize, index: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(num_vars);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(
                ExponentVector::zero(num_vars).with(index, k as u32),
                c.clone(),
            );
        }
        p
    }

    /// The single variable this polynomial depends on, if any. Errors when
    /// more than one variable occurs.
    pub fn univariate_index(&self) -> Result<Option<usize>> {
        match self.variables().as_slice() {
            [] => Ok(None),
            [v] => Ok(Some(*v)),
            _ => Err(Error::NotUnivariate),
        }
    }
}

fn check_index(index: usize, num_vars: usize) -> Result<()> {
    if index < num_vars {
        Ok(())
    } else {
        Err(Error::VariableIndex { index, num_vars })
    }
}

fn powers_of(c: &Rational, max: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = Rational::one();
    for _ in 0..=max {
        out.push(acc.clone());
        acc *= c;
    }
    debug_assert_eq!(out.last().cloned(), Some(pow(c, max)));
    out
}

fn binomial_rows(max: u32) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for d in 1..=max as usize {
        let prev = &rows[d - 1];
        let mut row = vec![BigInt::one(); d + 1];
        for k in 1..d {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows.into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect()
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics on a variable-count mismatch; use the `checked_*`
            /// methods to get an error instead.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }

        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_polynomial(self))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
