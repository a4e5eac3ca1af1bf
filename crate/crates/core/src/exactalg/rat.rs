//! Arbitrary-precision rationals and the `p/q` literal format.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced rational with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses `"p/q"` or `"p"`. Decimal points and exponents are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::parse(format!("\"{s}\""), "expected a rational literal p/q or p");
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse(format!("\"{s}\""), "zero denominator"));
    }
    Ok(Rat::new(num, den))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let k = 64 - (r.numer().bits() as i64 - r.denom().bits() as i64);
    let q = if k >= 0 {
        (r.numer() << (k as usize)) / r.denom()
    } else {
        r.numer() / (r.denom() << ((-k) as usize))
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(k as i32))
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Gcd of the numerators of `values` (after clearing to a common denominator).
pub fn integer_content(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Nearest integer, ties away from zero.
pub fn round(r: &Rat) -> BigInt {
    r.round().to_integer()
}

/// Rational with small height approximating `x`; presentation only.
pub fn from_f64_approx(x: f64, max_den: i64) -> Rat {
    let den = max_den.max(1);
    let n = (x * den as f64).round() as i64;
    ratio(n, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse_rat("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("-10/7").unwrap(), ratio(-10, 7));
        assert_eq!(parse_rat("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rat("342144").unwrap(), rat(342144));
    }

    #[test]
    fn parse_rejects_floats_and_zero_denominator() {
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1e3").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn formatting_round_trips() {
        for s in ["0", "-3", "2/5", "-16/7"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
    }

    #[test]
    fn denominators_are_positive_and_reduced() {
        let r = Rat::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(fmt_rat(&r), "-2/3");
        assert!(r.denom().is_positive());
    }

    #[test]
    fn to_f64_handles_huge_values() {
        let big = Rat::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-9);
    }
}
