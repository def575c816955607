use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Returns the canonical representative. `BigRational` already reduces on
/// construction, so this rebuilds from raw parts to be safe against `new_raw`.
pub fn rational_normalize(r: &Rational) -> Rational {
    let (n, d) = (r.numer().clone(), r.denom().clone());
    if d.is_zero() {
        panic!("zero denominator");
    }
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / &g, d / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Rational::new_raw(n, d)
}

/// Parses "p", "p/q" or "-p/q" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge operands before dividing
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as u64;
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            n / d
        }
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rising factorial (x)_k for a rational x.
pub fn rising(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut y = x.clone();
    for _ in 0..k {
        acc *= &y;
        y += Rational::one();
    }
    acc
}

pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        big(BigInt::one() << (e as usize))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Serialises as "p/q", or "p" for integers.
pub fn rat_string(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(rational_normalize(&Rational::new_raw(2.into(), 4.into())), rat(1, 2));
        assert_eq!(rational_normalize(&Rational::new_raw((-1).into(), (-2).into())), rat(1, 2));
        assert_eq!(rat_string(&rat(6, 3)), "2");
        assert_eq!(rat_string(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rational("13/2").unwrap(), rat(13, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(rising(&int(-2), 3), int(0));
        assert_eq!(rising(&rat(1, 2), 2), rat(3, 4));
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
