use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::signature::{partitions, Signature};
use super::sympoly::SymPoly;
use crate::exact_core::linalg::solve_rational;
use crate::exact_core::rational::{big, factorial, Rational};
use crate::exact_core::{RatFun, Scalar};

/// m↔p transition data and the α-graded Gram matrix of the monomial basis in degree n.
pub struct DegreeTables {
    pub parts: Vec<Signature>,
    /// p_ρ = Σ_λ p_to_m[ρ][λ] m_λ
    pub p_to_m: Vec<Vec<Rational>>,
    /// m_λ = Σ_ρ m_to_p[λ][ρ] p_ρ
    pub m_to_p: Vec<Vec<Rational>>,
    /// ⟨m_λ, m_μ⟩_α = Σ_k gram[λ][μ][k] α^k
    pub gram: Vec<Vec<Vec<Rational>>>,
}

fn tables_cache() -> &'static RwLock<HashMap<u32, Arc<DegreeTables>>> {
    static C: OnceLock<RwLock<HashMap<u32, Arc<DegreeTables>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// p_k · m_μ in the monomial basis of the full symmetric-function algebra.
fn pk_times_m(k: u32, mu: &Signature) -> Vec<(Signature, u64)> {
    let mut values: Vec<u32> = mu.parts().to_vec();
    values.push(0);
    values.dedup();
    let mut out = Vec::new();
    for u in values {
        let mut parts = mu.parts().to_vec();
        if u == 0 {
            parts.push(k);
        } else {
            let pos = parts.iter().position(|&x| x == u).unwrap();
            parts[pos] += k;
        }
        let nu = Signature::from_unsorted(&parts);
        let mult = nu.parts().iter().filter(|&&x| x == u + k).count() as u64;
        out.push((nu, mult));
    }
    out
}

fn z_lambda(rho: &Signature) -> BigInt {
    let mut z = BigInt::one();
    for (i, &m) in count_parts(rho).iter() {
        z *= BigInt::from(*i).pow(m as u32) * factorial(m);
    }
    z
}

fn count_parts(s: &Signature) -> BTreeMap<u32, u64> {
    let mut c = BTreeMap::new();
    for &x in s.parts() {
        *c.entry(x).or_insert(0) += 1;
    }
    c
}

pub fn degree_tables(n: u32) -> Arc<DegreeTables> {
    if let Some(t) = tables_cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let parts = partitions(n);
    let idx: HashMap<Signature, usize> = parts.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let np = parts.len();
    let mut p_to_m = vec![vec![Rational::zero(); np]; np];
    for (ri, rho) in parts.iter().enumerate() {
        // iterated multiplication by power sums, starting from 1 = m_∅
        let mut cur: BTreeMap<Signature, BigInt> = BTreeMap::new();
        cur.insert(Signature::empty(), BigInt::one());
        for &k in rho.parts() {
            let mut next: BTreeMap<Signature, BigInt> = BTreeMap::new();
            for (mu, c) in &cur {
                for (nu, mult) in pk_times_m(k, mu) {
                    *next.entry(nu).or_insert_with(BigInt::zero) += c * mult;
                }
            }
            cur = next;
        }
        for (lam, c) in cur {
            p_to_m[ri][idx[&lam]] = big(c);
        }
    }
    // p = L·m, so row λ of L^{-1} solves Lᵀ·y = e_λ
    let lt: Vec<Vec<Rational>> = (0..np).map(|i| (0..np).map(|j| p_to_m[j][i].clone()).collect()).collect();
    let mut m_to_p = vec![vec![Rational::zero(); np]; np];
    for lam in 0..np {
        let mut e = vec![Rational::zero(); np];
        e[lam] = Rational::one();
        let y = solve_rational(&lt, &e).expect("power-sum transition is invertible");
        m_to_p[lam] = y;
    }
    let zs: Vec<Rational> = parts.iter().map(|r| big(z_lambda(r))).collect();
    let lens: Vec<usize> = parts.iter().map(|r| r.len()).collect();
    let maxlen = n as usize + 1;
    let mut gram = vec![vec![vec![Rational::zero(); maxlen]; np]; np];
    for i in 0..np {
        for j in i..np {
            let mut g = vec![Rational::zero(); maxlen];
            for rho in 0..np {
                let t = &m_to_p[i][rho] * &m_to_p[j][rho];
                if !t.is_zero() {
                    g[lens[rho]] += t * &zs[rho];
                }
            }
            gram[i][j] = g.clone();
            gram[j][i] = g;
        }
    }
    let t = Arc::new(DegreeTables { parts, p_to_m, m_to_p, gram });
    tables_cache().write().unwrap().insert(n, t.clone());
    t
}

fn eval_alpha<S: Scalar>(poly: &[Rational], alpha: &S) -> S {
    let mut acc = S::zero();
    for c in poly.iter().rev() {
        acc = acc.times(alpha).plus(&S::from_rational(c));
    }
    acc
}

/// Gram–Schmidt of the monomial basis of degree n (ascending order) under ⟨·,·⟩_α.
/// Row i holds the coefficients of P_{parts[i]} on the monomial basis.
pub fn jack_family<S: Scalar>(n: u32, alpha: &S) -> Vec<Vec<S>> {
    let t = degree_tables(n);
    let np = t.parts.len();
    let g: Vec<Vec<S>> = (0..np).map(|i| (0..np).map(|j| eval_alpha(&t.gram[i][j], alpha)).collect()).collect();
    let mut fam: Vec<Vec<S>> = Vec::with_capacity(np);
    let mut norms: Vec<S> = Vec::with_capacity(np);
    for i in 0..np {
        let mut v: Vec<S> = vec![S::zero(); np];
        v[i] = S::one();
        for j in 0..i {
            // ⟨m_i, P_j⟩
            let mut ip = S::zero();
            for (k, c) in fam[j].iter().enumerate() {
                if !c.is_zero() {
                    ip = ip.plus(&c.times(&g[i][k]));
                }
            }
            if ip.is_zero() {
                continue;
            }
            let f = ip.times(&norms[j].recip().expect("degenerate Jack pairing"));
            for (k, c) in fam[j].iter().enumerate() {
                if !c.is_zero() {
                    v[k] = v[k].minus(&f.times(c));
                }
            }
        }
        // ⟨P_i, P_i⟩ = Σ_k v_k ⟨m_k, P_i⟩ = Σ_k v_k Σ_l v_l g[k][l]
        let mut nrm = S::zero();
        for k in 0..np {
            if v[k].is_zero() {
                continue;
            }
            let mut s = S::zero();
            for l in 0..np {
                if !v[l].is_zero() {
                    s = s.plus(&v[l].times(&g[k][l]));
                }
            }
            nrm = nrm.plus(&v[k].times(&s));
        }
        fam.push(v);
        norms.push(nrm);
    }
    fam
}

type FixedCache = RwLock<HashMap<(u32, Rational), Arc<Vec<Vec<Rational>>>>>;

fn fixed_cache() -> &'static FixedCache {
    static C: OnceLock<FixedCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

fn jack_family_fixed(n: u32, alpha: &Rational) -> Arc<Vec<Vec<Rational>>> {
    let key = (n, alpha.clone());
    if let Some(f) = fixed_cache().read().unwrap().get(&key) {
        return f.clone();
    }
    let f = Arc::new(jack_family(n, alpha));
    fixed_cache().write().unwrap().insert(key, f.clone());
    f
}

/// Jack P_λ^{(α)} in the monomial basis of the full symmetric-function algebra.
pub fn jack_p(lambda: &Signature, alpha: &Rational) -> BTreeMap<Signature, Rational> {
    let n = lambda.weight();
    let t = degree_tables(n);
    let fam = jack_family_fixed(n, alpha);
    let i = t.parts.iter().position(|s| s == lambda).unwrap();
    t.parts.iter().cloned().zip(fam[i].iter().cloned()).filter(|(_, c)| !c.is_zero()).collect()
}

/// Jack P_λ with α kept symbolic; the returned rational functions are in α.
pub fn jack_p_symbolic(lambda: &Signature) -> BTreeMap<Signature, RatFun> {
    let n = lambda.weight();
    let t = degree_tables(n);
    let fam = jack_family(n, &RatFun::nu());
    let i = t.parts.iter().position(|s| s == lambda).unwrap();
    t.parts.iter().cloned().zip(fam[i].iter().cloned()).filter(|(_, c)| !c.is_zero()).collect()
}

/// P_λ^{(α)} restricted to r variables.
pub fn jack_p_vars(lambda: &Signature, alpha: &Rational, r: usize) -> SymPoly<Rational> {
    SymPoly::from_terms(r, jack_p(lambda, alpha))
}

/// ⟨f, g⟩_α for degree-n elements given by monomial coefficients.
pub fn jack_pairing<S: Scalar>(n: u32, f: &BTreeMap<Signature, S>, g: &BTreeMap<Signature, S>, alpha: &S) -> S {
    let t = degree_tables(n);
    let idx: HashMap<&Signature, usize> = t.parts.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut acc = S::zero();
    for (a, x) in f {
        for (b, y) in g {
            let w = eval_alpha(&t.gram[idx[a]][idx[b]], alpha);
            acc = acc.plus(&x.times(y).times(&w));
        }
    }
    acc
}

/// True when P − m_λ is supported on signatures strictly dominated by λ.
pub fn is_dominance_triangular<S: Scalar>(lambda: &Signature, p: &BTreeMap<Signature, S>) -> bool {
    p.iter().all(|(mu, c)| {
        if mu == lambda {
            *c == S::one()
        } else {
            lambda.dominates(mu) && mu != lambda
        }
    }) && p.contains_key(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::{int, rat};

    fn sig(p: &[u32]) -> Signature {
        Signature::new(p).unwrap()
    }

    #[test]
    fn power_sum_table_small() {
        let t = degree_tables(2);
        // parts: (1,1), (2); p_{11} = m_2 + 2 m_11, p_2 = m_2
        assert_eq!(t.parts, vec![sig(&[1, 1]), sig(&[2])]);
        assert_eq!(t.p_to_m[0], vec![int(2), int(1)]);
        assert_eq!(t.p_to_m[1], vec![int(0), int(1)]);
    }

    #[test]
    fn jack_degree_two() {
        // Gram–Schmidt oracle: P_(2) = m_2 + 2/(α+1) m_11
        for a in [int(1), int(2), rat(2, 3), rat(1, 4)] {
            let p = jack_p(&sig(&[2]), &a);
            assert_eq!(p[&sig(&[2])], int(1));
            assert_eq!(p[&sig(&[1, 1])], int(2) / (a.clone() + int(1)));
        }
        let ps = jack_p_symbolic(&sig(&[2]));
        let expect = RatFun::from_int(2) / (RatFun::nu() + RatFun::one());
        assert_eq!(ps[&sig(&[1, 1])], expect);
        assert_eq!(jack_p(&sig(&[1]), &int(3)).len(), 1);
        assert_eq!(jack_p(&sig(&[1, 1]), &int(3)).len(), 1);
    }

    #[test]
    fn schur_at_alpha_one() {
        // s_(2,1) = m_21 + 2 m_111
        let p = jack_p(&sig(&[2, 1]), &int(1));
        assert_eq!(p[&sig(&[1, 1, 1])], int(2));
        // zonal polynomials (α = 2): P_(2) = m_2 + (2/3) m_11
        let z = jack_p(&sig(&[2]), &int(2));
        assert_eq!(z[&sig(&[1, 1])], rat(2, 3));
    }

    #[test]
    fn orthogonality_degree_four() {
        let a = rat(2, 3);
        let ps = partitions(4);
        for l in &ps {
            let pl = jack_p(l, &a);
            assert!(is_dominance_triangular(l, &pl));
            for m in &ps {
                if m < l {
                    assert!(jack_pairing(4, &pl, &jack_p(m, &a), &a).is_zero());
                }
            }
        }
    }
}
