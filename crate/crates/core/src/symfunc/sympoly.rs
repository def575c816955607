use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use super::signature::{distinct_permutations, orbit_size, Signature};
use crate::exact_core::rational::{big, Rational};
use crate::exact_core::Scalar;

/// Symmetric polynomial in `nvars` variables, in the monomial-symmetric basis.
#[derive(Clone, PartialEq, Debug)]
pub struct SymPoly<S> {
    nvars: usize,
    terms: BTreeMap<Signature, S>,
}

impl<S: Scalar> SymPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Signature::empty(), c);
        p
    }

    /// m_λ; zero when λ has more parts than variables.
    pub fn monomial(sig: Signature, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(sig, S::one());
        p
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Signature, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (s, c) in it {
            p.add_term(s, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, sig: Signature, c: S) {
        if sig.len() > self.nvars || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&sig) {
            Some(v) => {
                let s = v.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&sig);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(sig, c);
            }
        }
    }

    pub fn coeff(&self, sig: &Signature) -> S {
        self.terms.get(sig).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Signature, S> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Signature, &S)> {
        self.terms.iter()
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

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|s| s.weight()).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (s, c) in &o.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&S::one().negated()))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SymPoly { nvars: self.nvars, terms: self.terms.iter().map(|(s, v)| (s.clone(), v.times(c))).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&S::from_rational(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut acc: BTreeMap<Signature, S> = BTreeMap::new();
        for (l, a) in &self.terms {
            for (m, b) in &o.terms {
                let ab = a.times(b);
                for (nu, k) in mono_product(l, m, self.nvars).iter() {
                    let t = ab.scaled(k);
                    match acc.get_mut(nu) {
                        Some(v) => *v = v.plus(&t),
                        None => {
                            acc.insert(nu.clone(), t);
                        }
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SymPoly { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut acc = S::zero();
        for (sig, c) in &self.terms {
            acc = acc.plus(&c.times(&monomial_eval(sig, point)));
        }
        acc
    }

    /// f(−x): each degree-k component picks up (−1)^k.
    pub fn negate_vars(&self) -> Self {
        SymPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), if s.weight() % 2 == 1 { c.negated() } else { c.clone() }))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        SymPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(s, _)| s.weight() == k).map(|(s, c)| (s.clone(), c.clone())).collect(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SymPoly<T> {
        SymPoly::from_terms(self.nvars, self.terms.iter().map(|(s, c)| (s.clone(), f(c))))
    }

    /// Multiplies by e_r^k = (t₁⋯t_r)^k.
    pub fn shift_by_det(&self, k: u32) -> Self {
        SymPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(s, c)| (s.add_const(self.nvars, k), c.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(s, c)| json!({"sig": s.to_vec(), "coef": c.to_json()}))
            .collect();
        json!({"nvars": self.nvars, "terms": terms})
    }

    pub fn fmt_with(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                if s.is_empty() { format!("{c}") } else { format!("({c})*m{}[{var}]", s) }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<S: Scalar> fmt::Display for SymPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("t"))
    }
}

pub fn sympoly_mul<S: Scalar>(f: &SymPoly<S>, g: &SymPoly<S>) -> SymPoly<S> {
    f.mul(g)
}

pub fn sympoly_eval<S: Scalar>(f: &SymPoly<S>, point: &[S]) -> S {
    f.eval(point)
}

pub fn sympoly_negate_vars<S: Scalar>(f: &SymPoly<S>) -> SymPoly<S> {
    f.negate_vars()
}

/// m_λ evaluated at a point.
pub fn monomial_eval<S: Scalar>(sig: &Signature, point: &[S]) -> S {
    let r = point.len();
    if sig.len() > r {
        return S::zero();
    }
    let mut acc = S::zero();
    for perm in distinct_permutations(&sig.padded(r)) {
        let mut t = S::one();
        for (x, &e) in point.iter().zip(&perm) {
            for _ in 0..e {
                t = t.times(x);
            }
        }
        acc = acc.plus(&t);
    }
    acc
}

type ProductTable = Vec<(Signature, Rational)>;
type ProductCache = RwLock<HashMap<(Signature, Signature, usize), Arc<ProductTable>>>;

fn product_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Structure constants of m_λ·m_μ in r variables.
pub fn mono_product(l: &Signature, m: &Signature, r: usize) -> Arc<ProductTable> {
    let key = if l <= m { (l.clone(), m.clone(), r) } else { (m.clone(), l.clone(), r) };
    if let Some(t) = product_cache().read().unwrap().get(&key) {
        return t.clone();
    }
    let (l, m) = (&key.0, &key.1);
    let lp = l.padded(r);
    let mut counts: BTreeMap<Signature, u64> = BTreeMap::new();
    for beta in distinct_permutations(&m.padded(r)) {
        let gamma: Vec<u32> = lp.iter().zip(&beta).map(|(x, y)| x + y).collect();
        *counts.entry(Signature::from_unsorted(&gamma)).or_insert(0) += 1;
    }
    let nl = orbit_size(l, r);
    let table: ProductTable = counts
        .into_iter()
        .map(|(nu, c)| {
            let k = Rational::new(BigInt::from(nl * c), BigInt::from(orbit_size(&nu, r)));
            (nu, k)
        })
        .collect();
    let t = Arc::new(table);
    product_cache().write().unwrap().insert(key, t.clone());
    t
}

/// Coefficient of m_ν in Π_j (1 + c t_j)^n, i.e. Π_j binom(n, ν_j) c^{|ν|}.
pub fn binomial_product<S: Scalar>(r: usize, n: u32, c: &S) -> SymPoly<S> {
    let mut p = SymPoly::zero(r);
    for sig in super::signature::gen_signatures(None, n, r) {
        let mut k = BigInt::one();
        for &x in &sig.padded(r) {
            k *= crate::exact_core::rational::binomial(n as u64, x as u64);
        }
        let mut cc = S::from_rational(&big(k));
        for _ in 0..sig.weight() {
            cc = cc.times(c);
        }
        p.add_term(sig, cc);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::int;

    fn sig(p: &[u32]) -> Signature {
        Signature::new(p).unwrap()
    }

    #[test]
    fn spec_examples() {
        let m1: SymPoly<Rational> = SymPoly::monomial(sig(&[1]), 2);
        let sq = m1.mul(&m1);
        assert_eq!(sq.coeff(&sig(&[2])), int(1));
        assert_eq!(sq.coeff(&sig(&[1, 1])), int(2));
        let m11: SymPoly<Rational> = SymPoly::monomial(sig(&[1, 1]), 3);
        assert_eq!(m11.eval(&[int(1), int(1), int(1)]), int(3));
        let f = SymPoly::<Rational>::monomial(sig(&[1]), 2).add(&SymPoly::monomial(sig(&[1, 1]), 2));
        let g = f.negate_vars();
        assert_eq!(g.coeff(&sig(&[1])), int(-1));
        assert_eq!(g.coeff(&sig(&[1, 1])), int(1));
    }

    #[test]
    fn product_matches_evaluation() {
        let pts = [int(2), int(-3), int(5)];
        let a = SymPoly::<Rational>::monomial(sig(&[2, 1]), 3).add(&SymPoly::constant(3, int(4)));
        let b = SymPoly::<Rational>::monomial(sig(&[1, 1, 1]), 3).add(&SymPoly::monomial(sig(&[3]), 3));
        assert_eq!(a.mul(&b).eval(&pts), a.eval(&pts) * b.eval(&pts));
    }

    #[test]
    fn too_many_parts_vanish() {
        let p: SymPoly<Rational> = SymPoly::monomial(sig(&[1, 1, 1]), 2);
        assert!(p.is_zero());
    }

    #[test]
    fn binomial_expansion() {
        let p = binomial_product::<Rational>(2, 2, &int(-1));
        let x = [int(3), int(7)];
        assert_eq!(p.eval(&x), int(4) * int(36));
    }
}
