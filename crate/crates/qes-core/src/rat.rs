//! Arbitrary-precision rational scalars.
//!
//! `BigRat` is the coefficient type used everywhere in the exact layer. It is
//! always stored reduced with a positive denominator, and all arithmetic is
//! exact; both invariants are maintained by the backing implementation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type BigRat = num_rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &BigRat) -> bool {
    r.is_zero()
}

pub fn to_f64(r: &BigRat) -> f64 {
    // exact conversion can overflow i64; go through string-free path
    let num = r.numer();
    let den = r.denom();
    bigint_to_f64(num) / bigint_to_f64(den)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut acc = 0.0f64;
    for d in digits.iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -acc
    } else {
        acc
    }
}

/// Parse "p", "-p", or "p/q".
pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRat::from_integer(n))
    }
}

/// Canonical text form: "p" or "p/q" with q > 0.
pub fn rat_to_string(r: &BigRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = frac(4, -6);
        assert_eq!(r, frac(-2, 3));
        assert!(r.denom().is_positive());
        assert_eq!(rat_to_string(&r), "-2/3");
    }

    #[test]
    fn exact_arithmetic() {
        let a = frac(1, 3);
        let b = frac(1, 6);
        assert_eq!(&a + &b, frac(1, 2));
        assert_eq!(&a * &b, frac(1, 18));
        assert_eq!(&a - &a, int(0));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3", "-7", "3/4", "-12/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(parse_rat("4/6"), Some(frac(2, 3)));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&frac(1, 4)), 0.25);
        assert_eq!(to_f64(&int(-3)), -3.0);
    }
}
