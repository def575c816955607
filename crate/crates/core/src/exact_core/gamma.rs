use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::poly::PolyNu;
use super::ratfun::RatFun;
use super::rational::{big, factorial, int, Rational};
use crate::error::{Error, Result};

/// Γ(c·ν + s)
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaArg {
    pub c: u32,
    pub s: Rational,
}

/// Finite product of Γ(c·ν+s)^{±1}, a rational scalar, and √π^grade.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaQuotient {
    pub numer: Vec<GammaArg>,
    pub denom: Vec<GammaArg>,
    pub sqrt_pi_grade: i32,
    pub scalar: Option<Rational>,
}

impl GammaQuotient {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(mut self, c: u32, s: Rational) -> Self {
        self.numer.push(GammaArg { c, s });
        self
    }

    pub fn den(mut self, c: u32, s: Rational) -> Self {
        self.denom.push(GammaArg { c, s });
        self
    }

    pub fn times(mut self, k: Rational) -> Self {
        let cur = self.scalar.take().unwrap_or_else(Rational::one);
        self.scalar = Some(cur * k);
        self
    }

    /// Multiplies by Γ_Ω(c·ν+s) = Π_{j=1}^{r} Γ(c·ν + s − (j−1)·a/2), or divides when `upper` is false.
    pub fn gamma_omega(mut self, r: u32, a: &Rational, c: u32, s: Rational, upper: bool) -> Self {
        for j in 0..r {
            let arg = GammaArg { c, s: &s - a * int(j as i64) / int(2) };
            if upper {
                self.numer.push(arg);
            } else {
                self.denom.push(arg);
            }
        }
        self
    }

    pub fn inverse(&self) -> Self {
        GammaQuotient {
            numer: self.denom.clone(),
            denom: self.numer.clone(),
            sqrt_pi_grade: -self.sqrt_pi_grade,
            scalar: self.scalar.as_ref().map(|s| Rational::one() / s),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.numer.extend(o.numer.iter().cloned());
        out.denom.extend(o.denom.iter().cloned());
        out.sqrt_pi_grade += o.sqrt_pi_grade;
        if let Some(s) = &o.scalar {
            out = out.times(s.clone());
        }
        out
    }

    pub fn reduce(&self) -> Result<RatFun> {
        gamma_quotient_reduce(self)
    }
}

/// Pairs Γ factors with equal ν-coefficient and integer argument gap into
/// Pochhammer products, expands the remaining constant Γ's at integers and
/// half-integers, and returns the resulting element of ℚ(ν).
pub fn gamma_quotient_reduce(g: &GammaQuotient) -> Result<RatFun> {
    let mut numer = g.numer.clone();
    let mut denom = g.denom.clone();
    let mut top = PolyNu::one();
    let mut bot = PolyNu::one();
    let mut scalar = g.scalar.clone().unwrap_or_else(Rational::one);
    let mut grade = g.sqrt_pi_grade;

    // Pair numerator with denominator factors.
    let mut i = 0;
    while i < numer.len() {
        let found = denom.iter().position(|d| {
            d.c == numer[i].c && (&numer[i].s - &d.s).denom().is_one()
        });
        match found {
            Some(j) => {
                let n = numer.swap_remove(i);
                let d = denom.swap_remove(j);
                let k = (&n.s - &d.s).to_integer().to_i64().expect("huge gamma gap");
                let c = int(n.c as i64);
                if k >= 0 {
                    // Γ(x+k)/Γ(x) = (x)_k
                    top = top.mul(&PolyNu::rising_linear(&c, &d.s, k as u64));
                } else {
                    bot = bot.mul(&PolyNu::rising_linear(&c, &n.s, (-k) as u64));
                }
            }
            None => i += 1,
        }
    }

    let mut leftovers = Vec::new();
    for (list, upper) in [(&numer, true), (&denom, false)] {
        for arg in list.iter() {
            if arg.c != 0 {
                leftovers.push(format!("Γ({}ν + {})", arg.c, arg.s));
                continue;
            }
            match const_gamma(&arg.s) {
                Ok((v, dg)) => {
                    if upper {
                        scalar *= v;
                        grade += dg;
                    } else {
                        scalar /= v;
                        grade -= dg;
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    if !leftovers.is_empty() {
        return Err(Error::IrreducibleGamma(leftovers.join(" ")));
    }
    if grade != 0 {
        return Err(Error::IrreducibleGamma(format!("residual sqrt(pi)^{grade}")));
    }
    let f = RatFun::new(top, bot)?;
    Ok(f.scale(&scalar))
}

/// Γ(s) for integer or half-integer s, as (rational, √π grade).
fn const_gamma(s: &Rational) -> Result<(Rational, i32)> {
    if s.denom().is_one() {
        let n = s.to_integer();
        if !n.is_positive() {
            return Err(Error::Pole(format!("Γ({s})")));
        }
        let n = n.to_u64().unwrap();
        return Ok((big(factorial(n - 1)), 0));
    }
    if *s.denom() == BigInt::from(2) {
        // s = n + 1/2
        let n = (s - Rational::new(1.into(), 2.into())).to_integer();
        if !n.is_negative() {
            let n = n.to_u64().unwrap();
            let v = Rational::new(factorial(2 * n), BigInt::from(4).pow(n as u32) * factorial(n));
            return Ok((v, 1));
        }
        let m = (-n).to_u64().unwrap();
        // Γ(1/2 − m) = (−4)^m m! √π / (2m)!
        let mut v = Rational::new(BigInt::from(4).pow(m as u32) * factorial(m), factorial(2 * m));
        if m.is_odd() {
            v = -v;
        }
        return Ok((v, 1));
    }
    Err(Error::IrreducibleGamma(format!("Γ({s})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;

    #[test]
    fn spec_examples() {
        let g = GammaQuotient::new().num(1, int(1)).den(1, int(-1));
        let expect = RatFun::from_poly(PolyNu::from_roots(&[int(0), int(1)]));
        assert_eq!(g.reduce().unwrap(), expect);

        let h = GammaQuotient::new()
            .num(0, rat(3, 2))
            .num(0, rat(3, 2))
            .den(0, rat(3, 2))
            .den(0, rat(3, 2));
        assert!(h.reduce().unwrap().is_one());

        let k = GammaQuotient::new().num(2, int(-3)).den(2, int(-5));
        let expect = RatFun::from_poly(
            PolyNu::linear(&int(2), &int(-4)).mul(&PolyNu::linear(&int(2), &int(-5))),
        );
        assert_eq!(k.reduce().unwrap(), expect);
    }

    #[test]
    fn half_integer_constants() {
        // Γ(5/2)/Γ(1/2) = 3/4
        let g = GammaQuotient::new().num(0, rat(5, 2)).den(0, rat(1, 2));
        assert_eq!(g.reduce().unwrap().as_constant(), Some(rat(3, 4)));
        // Γ(-1/2)·Γ(3/2) / Γ(1/2)^2 = -2 · 1/2 = -1
        let g = GammaQuotient::new()
            .num(0, rat(-1, 2))
            .num(0, rat(7, 2))
            .den(0, rat(1, 3))
            .den(0, rat(1, 3));
        assert!(g.reduce().is_err());
        let g = GammaQuotient::new().num(0, rat(-1, 2)).num(0, rat(3, 2)).den(0, int(1));
        assert!(matches!(g.reduce(), Err(Error::IrreducibleGamma(_))));
    }

    #[test]
    fn residual_errors() {
        let g = GammaQuotient::new().num(1, int(0)).den(2, int(0));
        assert!(matches!(g.reduce(), Err(Error::IrreducibleGamma(_))));
        let g = GammaQuotient::new().num(0, int(0));
        assert!(matches!(g.reduce(), Err(Error::Pole(_))));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let g = GammaQuotient::new()
            .gamma_omega(2, &int(1), 1, int(1), true)
            .gamma_omega(2, &int(1), 1, rat(-1, 2), false);
        let a = g.reduce().unwrap();
        let b = g.inverse().reduce().unwrap();
        assert!((a * b).is_one());
    }
}
