//! Exact real root isolation: Sturm sequences on the squarefree part,
//! multiplicities from the Yun decomposition, bisection refinement.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{format_rational, int, primitive_scale, yun_squarefree, Polynomial, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest power first, no trailing zeros,
/// scaled by a positive rational to coprime integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense(Vec<Rational>);

impl Dense {
    pub(crate) fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        let scale = primitive_scale(c.iter());
        if !scale.is_one() {
            for x in &mut c {
                *x *= &scale;
            }
        }
        Self(c)
    }

    pub(crate) fn from_poly(p: &Polynomial) -> Result<Self> {
        let coeffs = match p.univariate_index()? {
            Some(v) => p.to_dense(v)?,
            None if p.is_zero() => Vec::new(),
            None => vec![p.constant_term()],
        };
        Ok(Self::new(coeffs))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub(crate) fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    fn rem(&self, d: &Self) -> Self {
        let mut r = self.0.clone();
        let dd = d.degree();
        let lc = d.0.last().expect("nonzero divisor");
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r.last().unwrap() / lc;
            for (k, c) in d.0.iter().enumerate() {
                r[shift + k] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Gcd, up to a scalar.
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Number of distinct roots in the closed interval `[lo, hi]`.
    pub(crate) fn closed_root_count(&self, lo: &Rational, hi: &Rational) -> usize {
        if self.degree() == 0 || lo > hi {
            return 0;
        }
        let at_lo = usize::from(self.eval(lo).is_zero());
        at_lo + Sturm::new(self).count(lo, hi)
    }

    /// Sign of the value at `x = p/q`, from the integer `sum a_i p^i q^(d-i)`.
    pub(crate) fn sign_at(&self, x: &Rational) -> i8 {
        let Some((lead, rest)) = self.0.split_last() else {
            return 0;
        };
        let (p, q) = (x.numer(), x.denom());
        let mut acc = lead.numer().clone();
        let mut q_pow = BigInt::one();
        for c in rest.iter().rev() {
            q_pow *= q;
            acc = acc * p + c.numer() * &q_pow;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// `1 + max |a_i / a_d|` bounds the absolute value of every root strictly.
    fn cauchy_bound(&self) -> Rational {
        let lc = self.0.last().expect("nonzero").abs();
        let max = self
            .0
            .iter()
            .take(self.degree())
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }
}

/// Sturm sequence of a nonzero dense polynomial.
pub(crate) struct Sturm(Vec<Dense>);

impl Sturm {
    pub(crate) fn new(p: &Dense) -> Self {
        let mut seq = vec![p.clone()];
        let d = p.derivative();
        if d.is_zero() {
            return Self(seq);
        }
        seq.push(d);
        loop {
            let k = seq.len();
            let r = seq[k - 2].rem(&seq[k - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(Dense::new(r.0.into_iter().map(|c| -c).collect()));
        }
        Self(seq)
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.0 {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub(crate) fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Number of distinct real roots of the univariate `p` in `(a, b]`.
pub fn sturm_count(p: &Polynomial, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = Dense::from_poly(p)?;
    Ok(Sturm::new(&d).count(a, b))
}

/// Either an exact rational root (`lower == upper`) or an open interval
/// `(lower, upper)` containing exactly one root, with both endpoints
/// non-roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "ser_rational")]
    pub lower: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub upper: Rational,
    pub multiplicity: u32,
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl IsolatingInterval {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / int(2)
    }

    /// Closed hulls intersect.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }
}

/// Halves `(lower, upper)` around the unique root of the squarefree `s`.
pub(crate) fn bisect(iv: &mut IsolatingInterval, s: &Dense) {
    if iv.is_exact() {
        return;
    }
    let m = iv.midpoint();
    let sm = s.sign_at(&m);
    if sm == 0 {
        iv.lower = m.clone();
        iv.upper = m;
    } else if sm == s.sign_at(&iv.lower) {
        iv.lower = m;
    } else {
        iv.upper = m;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootIsolation {
    /// Sorted ascending, pairwise disjoint.
    pub intervals: Vec<IsolatingInterval>,
    pub polynomial_degree: u32,
    #[serde(skip)]
    squarefree: Option<Dense>,
}

impl RootIsolation {
    pub fn root_count(&self) -> usize {
        self.intervals.len()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.intervals.iter().map(|iv| iv.multiplicity).collect()
    }

    /// Bisects every non-exact interval until its width is at most `width`.
    pub fn refine_to_width(&mut self, width: &Rational) {
        let Some(s) = &self.squarefree else { return };
        for iv in &mut self.intervals {
            while !iv.is_exact() && &iv.width() > width {
                bisect(iv, s);
            }
        }
    }

    /// Exact rational roots with their multiplicities.
    pub fn rational_roots(&self) -> Vec<(Rational, u32)> {
        self.intervals
            .iter()
            .filter(|iv| iv.is_exact())
            .map(|iv| (iv.lower.clone(), iv.multiplicity))
            .collect()
    }

    pub(crate) fn squarefree(&self) -> Option<&Dense> {
        self.squarefree.as_ref()
    }
}

/// Isolates the real roots of a univariate polynomial (a constant has none).
pub fn isolate_real_roots(p: &Polynomial) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = p.total_degree().unwrap_or(0);
    let factors: Vec<(Dense, u32)> = yun_squarefree(p)?
        .into_iter()
        .map(|(f, m)| Ok((Dense::from_poly(&f)?, m)))
        .collect::<Result<_>>()?;
    if factors.is_empty() {
        return Ok(RootIsolation {
            intervals: Vec::new(),
            polynomial_degree: degree,
            squarefree: None,
        });
    }
    let mut s = Dense::new(vec![Rational::one()]);
    for (f, _) in &factors {
        s = mul(&s, f);
    }
    let sturm = Sturm::new(&s);
    let b = s.cauchy_bound() + Rational::one();
    let a = -b.clone();
    let total = sturm.count(&a, &b);
    let mut raw = Vec::new();
    isolate_rec(&s, &sturm, a, b, total, &mut raw);

    let intervals = raw
        .into_iter()
        .map(|(lower, upper)| {
            let (factor, multiplicity) = factors
                .iter()
                .find(|(f, _)| {
                    if lower == upper {
                        f.sign_at(&lower) == 0
                    } else {
                        f.sign_at(&lower) * f.sign_at(&upper) < 0
                    }
                })
                .expect("every root of the squarefree part belongs to a Yun factor");
            let (lower, upper) = certify_rational(factor, lower, upper);
            IsolatingInterval {
                lower,
                upper,
                multiplicity: *multiplicity,
            }
        })
        .collect();
    Ok(RootIsolation {
        intervals,
        polynomial_degree: degree,
        squarefree: Some(s),
    })
}

// A rational root p/q of the integer-primitive squarefree `f` has q | lc(f),
// and two distinct such fractions are at least 1/lc^2 apart. Once the
// interval is narrower than that, its simplest fraction is the only candidate.
fn certify_rational(f: &Dense, lower: Rational, upper: Rational) -> (Rational, Rational) {
    let mut iv = IsolatingInterval {
        lower,
        upper,
        multiplicity: 0,
    };
    if f.degree() == 1 {
        let root = -&f.0[0] / &f.0[1];
        return (root.clone(), root);
    }
    let lc = f.0.last().expect("nonzero");
    let width = Rational::one() / (lc * lc);
    while !iv.is_exact() && iv.width() >= width {
        bisect(&mut iv, f);
    }
    if !iv.is_exact() {
        let c = simplest_between(&iv.lower, &iv.upper);
        if f.sign_at(&c) == 0 {
            return (c.clone(), c);
        }
    }
    (iv.lower, iv.upper)
}

/// The fraction with the smallest denominator in the open interval `(lo, hi)`;
/// among integers, the one closest to zero.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let f = lo.floor();
    let above = &f + Rational::one();
    if &above < hi {
        let zero = Rational::zero();
        return if lo < &zero && &zero < hi {
            zero
        } else if hi <= &zero {
            hi.ceil() - Rational::one()
        } else {
            above
        };
    }
    let inv_hi = Rational::one() / (hi - &f);
    let t = if *lo == f {
        inv_hi.floor() + Rational::one()
    } else {
        simplest_between(&inv_hi, &(Rational::one() / (lo - &f)))
    };
    f + Rational::one() / t
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![Rational::zero(); a.0.len() + b.0.len() - 1];
    for (i, x) in a.0.iter().enumerate() {
        for (j, y) in b.0.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Dense::new(out)
}

// `count` is the number of roots of `s` in `(a, b]`; emits in ascending order.
fn isolate_rec(
    s: &Dense,
    sturm: &Sturm,
    a: Rational,
    b: Rational,
    count: usize,
    out: &mut Vec<(Rational, Rational)>,
) {
    match count {
        0 => {}
        1 => {
            if s.eval(&b).is_zero() {
                out.push((b.clone(), b));
                return;
            }
            let (mut a, mut b) = (a, b);
            // A left endpoint may be a root owned by the neighbouring interval.
            while s.eval(&a).is_zero() {
                let m = (&a + &b) / int(2);
                if s.eval(&m).is_zero() {
                    out.push((m.clone(), m));
                    return;
                }
                if sturm.count(&a, &m) == 1 {
                    b = m;
                } else {
                    a = m;
                }
            }
            out.push((a, b));
        }
        _ => {
            let m = (&a + &b) / int(2);
            let left = sturm.count(&a, &m);
            isolate_rec(s, sturm, a, m.clone(), left, out);
            isolate_rec(s, sturm, m, b, count - left, out);
        }
    }
}
