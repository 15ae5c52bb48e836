use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. `BigRational` keeps itself reduced with a positive
/// denominator, and zero is always `0/1`.
pub type Rational = BigRational;

/// Shorthand constructor used throughout tests and demos.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `2^{-k}`.
pub fn dyadic(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k as usize)
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Formats as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lowest common multiple of denominators and gcd of numerators of a list
/// of rationals; scaling by `lcm/gcd` turns them into coprime integers.
pub(crate) fn primitive_scale<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for v in values {
        lcm = lcm.lcm(v.denom());
        gcd = gcd.gcd(v.numer());
    }
    if gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(lcm, gcd.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, -7), Rational::zero());
        assert_eq!(rat(0, 5).denom(), &BigInt::one());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&rat(-3, 4)), "-3/4");
        assert_eq!(format_rational(&int(12)), "12");
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&rat(-2, 3), 3), rat(-8, 27));
        assert_eq!(pow(&rat(5, 1), 0), int(1));
        assert_eq!(dyadic(3), rat(1, 8));
    }

    #[test]
    fn scale_to_primitive_integers() {
        let vals = [rat(1, 2), rat(-3, 4), int(3)];
        let s = primitive_scale(vals.iter());
        let scaled: Vec<_> = vals.iter().map(|v| v * &s).collect();
        assert_eq!(scaled, vec![int(2), int(-3), int(12)]);
    }
}
