use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// Dense univariate polynomial over ℚ in the indeterminate ν.
///
/// Stored as an integer coefficient vector over a common positive denominator,
/// with gcd(content, den) = 1. Index = power of ν.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyNu {
    num: Vec<BigInt>,
    den: BigInt,
}

impl PolyNu {
    pub fn zero() -> Self {
        PolyNu { num: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn nu() -> Self {
        PolyNu { num: vec![BigInt::zero(), BigInt::one()], den: BigInt::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_parts(vec![c.numer().clone()], c.denom().clone())
    }

    /// c1·ν + c0
    pub fn linear(c1: &Rational, c0: &Rational) -> Self {
        Self::from_coeffs(vec![c0.clone(), c1.clone()])
    }

    pub fn from_coeffs(c: Vec<Rational>) -> Self {
        let mut den = BigInt::one();
        for x in &c {
            den = den.lcm(x.denom());
        }
        let num = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Self::from_parts(num, den)
    }

    pub fn from_int_coeffs(num: Vec<BigInt>) -> Self {
        Self::from_parts(num, BigInt::one())
    }

    pub(crate) fn from_parts(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        zp_trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = zp_content(&num).gcd(&den);
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        PolyNu { num, den }
    }

    /// Integer numerator coefficients and the common denominator.
    pub fn int_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        match self.num.get(k) {
            Some(c) => Rational::new(c.clone(), self.den.clone()),
            None => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.num.is_empty() { None } else { Some(self.num.len() - 1) }
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg0(&self) -> usize {
        self.num.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        match self.num.last() {
            Some(c) => Rational::new(c.clone(), self.den.clone()),
            None => Rational::zero(),
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.num.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeff(0)),
            _ => None,
        }
    }

    pub fn add(&self, o: &PolyNu) -> PolyNu {
        if self.den == o.den {
            return Self::from_parts(zp_add(&self.num, &o.num), self.den.clone());
        }
        let a = zp_scale(&self.num, &o.den);
        let b = zp_scale(&o.num, &self.den);
        Self::from_parts(zp_add(&a, &b), &self.den * &o.den)
    }

    pub fn sub(&self, o: &PolyNu) -> PolyNu {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PolyNu {
        PolyNu { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &PolyNu) -> PolyNu {
        Self::from_parts(zp_mul(&self.num, &o.num), &self.den * &o.den)
    }

    pub fn scale(&self, c: &Rational) -> PolyNu {
        Self::from_parts(zp_scale(&self.num, c.numer()), &self.den * c.denom())
    }

    pub fn pow(&self, e: u32) -> PolyNu {
        let mut acc = PolyNu::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner on the integer numerator with homogenised denominator
        let (p, q) = (x.numer(), x.denom());
        let n = self.num.len();
        if n == 0 {
            return Rational::zero();
        }
        let mut acc = self.num[n - 1].clone();
        let mut qpow = BigInt::one();
        for k in (0..n - 1).rev() {
            qpow *= q;
            acc = acc * p + &self.num[k] * &qpow;
        }
        Rational::new(acc, qpow * &self.den)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let d = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = 0.0;
        for c in self.num.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc / d
    }

    /// p(ν + k)
    pub fn shift(&self, k: &Rational) -> PolyNu {
        let lin = PolyNu::linear(&Rational::one(), k);
        self.compose_linear(&lin)
    }

    /// p(ℓ(ν)) for a polynomial ℓ.
    pub fn compose_linear(&self, l: &PolyNu) -> PolyNu {
        let mut acc = PolyNu::zero();
        for c in self.coeffs().into_iter().rev() {
            acc = acc.mul(l).add(&PolyNu::constant(c));
        }
        acc
    }

    /// Euclidean division over ℚ.
    pub fn div_rem(&self, d: &PolyNu) -> (PolyNu, PolyNu) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.num.len() < d.num.len() {
            return (PolyNu::zero(), self.clone());
        }
        let k = (self.num.len() - d.num.len() + 1) as u32;
        let lc = d.num.last().unwrap().clone();
        let (q, r) = zp_pseudo_div(&self.num, &d.num);
        // lc^k · A = Q·B + R with A = self·den_a, B = d·den_b
        let lck = num_traits::pow(lc, k as usize);
        let qd = &lck * &self.den;
        let q = PolyNu::from_parts(zp_scale(&q, &d.den), qd.clone());
        let r = PolyNu::from_parts(r, qd);
        (q, r)
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &PolyNu) -> PolyNu {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Primitive integer part with positive leading coefficient, and the
    /// rational content c with self = c · primitive.
    pub fn primitive(&self) -> (Rational, PolyNu) {
        if self.is_zero() {
            return (Rational::zero(), PolyNu::zero());
        }
        let mut g = zp_content(&self.num);
        if self.num.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = self.num.iter().map(|c| c / &g).collect();
        (Rational::new(g, self.den.clone()), PolyNu { num: prim, den: BigInt::one() })
    }

    /// Monic-free gcd: the primitive integer representative with positive leading coefficient.
    pub fn gcd(&self, o: &PolyNu) -> PolyNu {
        PolyNu { num: zp_gcd(&self.num, &o.num), den: BigInt::one() }
    }

    /// Product of (ν - root) over the given roots.
    pub fn from_roots(roots: &[Rational]) -> PolyNu {
        let mut acc = PolyNu::one();
        for r in roots {
            acc = acc.mul(&PolyNu::linear(&Rational::one(), &(-r.clone())));
        }
        acc
    }

    /// Rising factorial (ℓ)(ℓ+1)…(ℓ+k-1) of the linear form c·ν + s.
    pub fn rising_linear(c: &Rational, s: &Rational, k: u64) -> PolyNu {
        let mut acc = PolyNu::one();
        let mut s = s.clone();
        for _ in 0..k {
            acc = acc.mul(&PolyNu::linear(c, &s));
            s += Rational::one();
        }
        acc
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mon = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mon);
            } else {
                out.push_str(&format!("{a}*{mon}"));
            }
        }
        out
    }
}

impl fmt::Display for PolyNu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("ν"))
    }
}

/// Returns the canonical representative; construction already normalises, so
/// this is the identity on well-formed values.
pub fn poly_normalize(p: &PolyNu) -> PolyNu {
    PolyNu::from_parts(p.num.clone(), p.den.clone())
}

// ---- integer polynomial kernels -------------------------------------------

pub(crate) fn zp_trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn zp_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn zp_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    zp_trim(&mut out);
    out
}

pub(crate) fn zp_scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn zp_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_trim(&mut out);
    out
}

/// Pseudo-division: lc(b)^(deg a - deg b + 1) · a = q·b + r.
pub(crate) fn zp_pseudo_div(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lc = &b[db];
    let mut r = a.to_vec();
    let steps = a.len() - b.len() + 1;
    let mut q = vec![BigInt::zero(); steps];
    for s in 0..steps {
        let k = a.len() - 1 - s; // current top degree
        // multiply everything by lc
        for c in q.iter_mut() {
            *c *= lc;
        }
        for c in r.iter_mut() {
            *c *= lc;
        }
        let t = r[k].clone() / lc; // exact since r was scaled by lc
        if !t.is_zero() {
            let shift = k - db;
            q[shift] += &t;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &t * bj;
            }
        }
        r.truncate(k);
    }
    zp_trim(&mut r);
    zp_trim(&mut q);
    (q, r)
}

/// Exact division of integer polynomials when the quotient is known to be integral.
pub(crate) fn zp_divexact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    assert!(a.len() >= b.len(), "inexact integer polynomial division");
    let lc = &b[db];
    let mut r = a.to_vec();
    let steps = a.len() - b.len() + 1;
    let mut q = vec![BigInt::zero(); steps];
    for s in 0..steps {
        let k = a.len() - 1 - s;
        if r[k].is_zero() {
            continue;
        }
        let (t, rem) = r[k].div_rem(lc);
        assert!(rem.is_zero(), "inexact integer polynomial division");
        let shift = k - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &t * bj;
        }
        q[shift] = t;
    }
    zp_trim(&mut r);
    assert!(r.is_empty(), "inexact integer polynomial division");
    zp_trim(&mut q);
    q
}

fn zp_primitive(p: &[BigInt]) -> Vec<BigInt> {
    let mut g = zp_content(p);
    if g.is_zero() {
        return Vec::new();
    }
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    p.iter().map(|c| c / &g).collect()
}

const MODP: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn modp(c: &BigInt) -> u64 {
    let m = BigInt::from(MODP);
    let r = c.mod_floor(&m);
    r.to_u64().unwrap()
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODP as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64) -> u64 {
    powmod(a, MODP - 2)
}

/// Degree of gcd(a, b) over F_p, or None when a leading coefficient vanishes mod p.
fn gcd_degree_modp(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    let mut x: Vec<u64> = a.iter().map(modp).collect();
    let mut y: Vec<u64> = b.iter().map(modp).collect();
    if *x.last()? == 0 || *y.last()? == 0 {
        return None;
    }
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.is_empty() {
            return Some(x.len() - 1);
        }
        // x <- x mod y
        let inv = invmod(*y.last().unwrap());
        let dy = y.len() - 1;
        while x.len() >= y.len() {
            let k = x.len() - 1;
            let t = mulmod(x[k], inv);
            if t != 0 {
                let shift = k - dy;
                for (j, &yj) in y.iter().enumerate() {
                    let s = mulmod(t, yj);
                    x[shift + j] = (x[shift + j] + MODP - s) % MODP;
                }
            }
            x.pop();
            trim(&mut x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
}

/// gcd over ℚ[ν] represented by its primitive integer associate with positive lead.
pub(crate) fn zp_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return zp_primitive(b);
    }
    if b.is_empty() {
        return zp_primitive(a);
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    if gcd_degree_modp(a, b) == Some(0) {
        return vec![BigInt::one()];
    }
    let (mut x, mut y) = (zp_primitive(a), zp_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let (_, r) = zp_pseudo_div(&x, &y);
        if r.is_empty() {
            return y;
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        x = y;
        y = zp_primitive(&r);
    }
}
