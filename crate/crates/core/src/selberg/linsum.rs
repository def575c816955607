use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_core::poly::{zp_add, zp_divexact, zp_mul};
use crate::exact_core::{PolyNu, RatFun, Rational};

/// Primitive linear form c·ν + n with c > 0.
pub(crate) type Lin = (i64, i64);

/// Streaming sum of terms coef / Π(c_k ν + n_k), every denominator a product
/// of known linear factors. Terms with identical factor multisets merge on entry.
#[derive(Default)]
pub(crate) struct LinearSum {
    terms: HashMap<Vec<Lin>, Rational>,
    constant_poles: bool,
}

impl LinearSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds coef / Π (c·ν + n) over `factors`; factors with c = 0 are folded
    /// into the coefficient.
    pub fn add(&mut self, coef: Rational, factors: &[(i64, i64)]) {
        if coef.is_zero() {
            return;
        }
        let mut coef = coef;
        let mut key: Vec<Lin> = Vec::with_capacity(factors.len());
        for &(c, n) in factors {
            if c == 0 {
                if n == 0 {
                    self.constant_poles = true;
                    return;
                }
                coef /= Rational::from_integer(n.into());
                continue;
            }
            let (c, n) = if c < 0 { (-c, -n) } else { (c, n) };
            let g = c.gcd(&n);
            if g != 1 {
                coef /= Rational::from_integer(g.into());
            }
            key.push((c / g, n / g));
        }
        key.sort_unstable();
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += coef;
    }

    pub fn finish(self) -> Result<RatFun> {
        if self.constant_poles {
            return Err(Error::Pole("constant integral diverges".into()));
        }
        let terms: Vec<(Vec<Lin>, Rational)> = self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Ok(RatFun::zero());
        }
        let mut maxmult: BTreeMap<Lin, u32> = BTreeMap::new();
        for (key, _) in &terms {
            for (f, m) in multiplicities(key) {
                let e = maxmult.entry(f).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let mut lcm = BigInt::one();
        for (_, c) in &terms {
            lcm = lcm.lcm(c.denom());
        }
        let mut num: Vec<BigInt> = Vec::new();
        for (key, c) in &terms {
            let mult: BTreeMap<Lin, u32> = multiplicities(key).into_iter().collect();
            let mut p = vec![c.numer() * (&lcm / c.denom())];
            for (f, &m) in &maxmult {
                let have = mult.get(f).copied().unwrap_or(0);
                for _ in have..m {
                    p = zp_mul(&p, &lin_poly(*f));
                }
            }
            num = zp_add(&num, &p);
        }
        let mut den: Vec<BigInt> = vec![BigInt::one()];
        let mut remaining: Vec<(Lin, u32)> = maxmult.into_iter().collect();
        // cancel common linear factors by root testing
        for (f, m) in remaining.iter_mut() {
            while *m > 0 && !num.is_empty() && vanishes_at(&num, *f) {
                num = zp_divexact(&num, &lin_poly(*f));
                *m -= 1;
            }
        }
        for (f, m) in &remaining {
            for _ in 0..*m {
                den = zp_mul(&den, &lin_poly(*f));
            }
        }
        if num.is_empty() {
            return Ok(RatFun::zero());
        }
        let num = PolyNu::from_parts(num, lcm);
        let den = PolyNu::from_parts(den, BigInt::one());
        Ok(RatFun::from_coprime(num, den))
    }
}

fn multiplicities(key: &[Lin]) -> Vec<(Lin, u32)> {
    let mut out: Vec<(Lin, u32)> = Vec::new();
    for &f in key {
        match out.last_mut() {
            Some((g, m)) if *g == f => *m += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

fn lin_poly((c, n): Lin) -> Vec<BigInt> {
    vec![BigInt::from(n), BigInt::from(c)]
}

/// p(−n/c) = 0, tested on the homogenised form Σ p_k (−n)^k c^{deg−k}.
fn vanishes_at(p: &[BigInt], (c, n): Lin) -> bool {
    let x = BigInt::from(-n);
    let c = BigInt::from(c);
    let mut acc = BigInt::zero();
    let mut cpow = BigInt::one();
    for k in (0..p.len()).rev() {
        acc = acc * &x + &p[k] * &cpow;
        if k > 0 {
            cpow *= &c;
        }
    }
    acc.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::int;

    #[test]
    fn partial_fractions_recombine() {
        let mut s = LinearSum::new();
        s.add(int(1), &[(1, -1)]);
        s.add(int(1), &[(1, -2)]);
        let f = s.finish().unwrap();
        let expect = RatFun::new(
            PolyNu::linear(&int(2), &int(-3)),
            PolyNu::from_roots(&[int(1), int(2)]),
        )
        .unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn cancellation_and_scaling() {
        // 1/(ν−1) − 1/(ν−1) + 2/(2ν−2) = 1/(ν−1)
        let mut s = LinearSum::new();
        s.add(int(1), &[(1, -1)]);
        s.add(int(-1), &[(1, -1)]);
        s.add(int(2), &[(2, -2)]);
        let f = s.finish().unwrap();
        assert_eq!(f, RatFun::affine(&int(1), &int(-1)).inv().unwrap());
        // 1/(ν(ν+1)) + 1/(ν+1) = 1/ν
        let mut s = LinearSum::new();
        s.add(int(1), &[(1, 1), (1, 0)]);
        s.add(int(1), &[(1, 1)]);
        let f = s.finish().unwrap();
        assert_eq!(f, RatFun::nu().inv().unwrap());
    }
}
