use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::poly::{zp_divexact, zp_gcd, PolyNu};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Element of ℚ(ν) in canonical form: gcd(num, den) = 1, den an integer
/// primitive polynomial with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: PolyNu,
    den: PolyNu,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: PolyNu::zero(), den: PolyNu::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn nu() -> Self {
        Self::from_poly(PolyNu::nu())
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFun { num: PolyNu::constant(c), den: PolyNu::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(Rational::from_integer(c.into()))
    }

    pub fn from_poly(p: PolyNu) -> Self {
        RatFun { num: p, den: PolyNu::one() }
    }

    /// c·ν + s
    pub fn affine(c: &Rational, s: &Rational) -> Self {
        Self::from_poly(PolyNu::linear(c, s))
    }

    pub fn new(num: PolyNu, den: PolyNu) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg0() > 0 {
            (divexact_q(&num, &g), divexact_q(&den, &g))
        } else {
            (num, den)
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Builds from a numerator and denominator already known to be coprime.
    pub(crate) fn from_coprime(num: PolyNu, den: PolyNu) -> Self {
        let (c, prim) = den.primitive();
        let num = num.scale(&(Rational::one() / c));
        RatFun { num, den: prim }
    }

    pub fn numer(&self) -> &PolyNu {
        &self.num
    }

    pub fn denom(&self) -> &PolyNu {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.deg0() == 0 && self.num.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.deg0() == 0 { self.num.as_constant() } else { None }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Value at ν = x, or None at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// f(ν + k)
    pub fn shift(&self, k: &Rational) -> Self {
        Self::from_coprime(self.num.shift(k), self.den.shift(k))
    }

    /// f(c·ν + s); the substitution is invertible for c ≠ 0 so coprimality is preserved.
    pub fn compose_affine(&self, c: &Rational, s: &Rational) -> Self {
        let l = PolyNu::linear(c, s);
        if c.is_zero() {
            let v = self.eval(s).expect("pole in constant substitution");
            return Self::from_rational(v);
        }
        Self::from_coprime(self.num.compose_linear(&l), self.den.compose_linear(&l))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "num": self.num.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "den": self.den.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.deg0() == 0 && self.den.coeff(0).is_one() {
            let s = self.num.fmt_var(var);
            return s;
        }
        format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
    }

    /// Exact arithmetic entry point mirroring the four field operations.
    pub fn arith(a: &Self, b: &Self, op: char) -> Result<Self> {
        match op {
            '+' => Ok(a + b),
            '-' | '−' => Ok(a - b),
            '*' | '×' => Ok(a * b),
            '/' | '÷' => a.checked_div(b),
            _ => Err(Error::Parse(format!("unknown operator {op}"))),
        }
    }
}

/// Exact quotient of a ℚ-polynomial by a primitive integer divisor.
fn divexact_q(p: &PolyNu, g: &PolyNu) -> PolyNu {
    let (pn, pd) = p.int_parts();
    let (gn, _) = g.int_parts();
    PolyNu::from_parts(zp_divexact(pn, gn), pd.clone())
}

fn gcd_poly(a: &PolyNu, b: &PolyNu) -> PolyNu {
    PolyNu::from_parts(zp_gcd(a.int_parts().0, b.int_parts().0), BigInt::one())
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("ν"))
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if n.is_zero() {
                return RatFun::zero();
            }
            let g = gcd_poly(&n, &self.den);
            if g.deg0() == 0 {
                return RatFun { num: n, den: self.den.clone() };
            }
            return RatFun::from_coprime(divexact_q(&n, &g), divexact_q(&self.den, &g));
        }
        // Henrici: g = gcd(b, d); num = a·(d/g) + c·(b/g); reduce by gcd(num, g)
        let g = gcd_poly(&self.den, &o.den);
        let (bg, dg) = if g.deg0() == 0 {
            (self.den.clone(), o.den.clone())
        } else {
            (divexact_q(&self.den, &g), divexact_q(&o.den, &g))
        };
        let n = self.num.mul(&dg).add(&o.num.mul(&bg));
        if n.is_zero() {
            return RatFun::zero();
        }
        let den = self.den.mul(&dg);
        if g.deg0() == 0 {
            return RatFun::from_coprime(n, den);
        }
        let g2 = gcd_poly(&n, &g);
        if g2.deg0() == 0 {
            RatFun::from_coprime(n, den)
        } else {
            RatFun::from_coprime(divexact_q(&n, &g2), divexact_q(&den, &g2))
        }
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        let g1 = gcd_poly(&self.num, &o.den);
        let g2 = gcd_poly(&o.num, &self.den);
        let (a, d) = if g1.deg0() > 0 {
            (divexact_q(&self.num, &g1), divexact_q(&o.den, &g1))
        } else {
            (self.num.clone(), o.den.clone())
        };
        let (c, b) = if g2.deg0() > 0 {
            (divexact_q(&o.num, &g2), divexact_q(&self.den, &g2))
        } else {
            (o.num.clone(), self.den.clone())
        };
        RatFun::from_coprime(a.mul(&c), b.mul(&d))
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        self.checked_div(o).expect("division by zero rational function")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: RatFun) -> RatFun {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: &RatFun) -> RatFun {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl RatFun {
    /// Sign of the leading coefficient of num·den, i.e. the sign as ν → +∞.
    pub fn sign_at_infinity(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.num.leading_coeff().is_positive() { 1 } else { -1 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::{int, rat};

    fn lin(c0: i64) -> RatFun {
        RatFun::affine(&int(1), &int(c0))
    }

    #[test]
    fn spec_examples() {
        let a = lin(-1);
        assert!((a.clone() / a.clone()).is_one());
        let s = lin(-1).inv().unwrap() + lin(-2).inv().unwrap();
        let expect = RatFun::new(
            PolyNu::linear(&int(2), &int(-3)),
            PolyNu::from_roots(&[int(1), int(2)]),
        )
        .unwrap();
        assert_eq!(s, expect);
        let sq = RatFun::from_poly(PolyNu::from_coeffs(vec![int(-1), int(0), int(1)]));
        assert_eq!(sq / lin(1), lin(-1));
    }

    #[test]
    fn canonical_denominator() {
        let f = RatFun::new(PolyNu::constant(int(1)), PolyNu::linear(&int(-2), &int(4))).unwrap();
        // 1/(4 - 2ν) = (-1/2)/(ν - 2)
        assert_eq!(f.denom(), &PolyNu::linear(&int(1), &int(-2)));
        assert_eq!(f.numer(), &PolyNu::constant(rat(-1, 2)));
        assert_eq!(f.eval(&int(3)), Some(rat(-1, 2)));
        assert_eq!(f.eval(&int(2)), None);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(RatFun::arith(&RatFun::one(), &RatFun::zero(), '÷'), Err(Error::DivisionByZero));
    }

    #[test]
    fn shift_compose() {
        let f = lin(-1).inv().unwrap();
        assert_eq!(f.shift(&int(1)), RatFun::nu().inv().unwrap());
        let g = f.compose_affine(&int(2), &int(0));
        assert_eq!(g.eval(&int(3)), Some(rat(1, 5)));
    }
}
