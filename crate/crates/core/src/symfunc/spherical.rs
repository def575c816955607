use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::jack::jack_p;
use super::params::DomainParams;
use super::signature::{gen_signatures, orbit_size, Signature};
use super::sympoly::{binomial_product, SymPoly};
use crate::error::{Error, Result};
use crate::exact_core::rational::{int, rat, rising, Rational};
use crate::exact_core::Scalar;

/// Generalized Pochhammer (x)_m = Π_j (x − (j−1)a/2)_{m_j}.
pub fn pochhammer_gen<S: Scalar>(base: &S, m: &Signature, a: u32) -> S {
    let mut acc = S::one();
    for (j, &mj) in m.parts().iter().enumerate() {
        let shift = rat(-((j as i64) * a as i64), 2);
        for k in 0..mj {
            let t = base.plus(&S::from_rational(&(&shift + int(k as i64))));
            acc = acc.times(&t);
        }
    }
    acc
}

/// Rational specialisation of the generalized Pochhammer symbol.
pub fn pochhammer_rat(x: &Rational, m: &Signature, a: u32) -> Rational {
    let mut acc = Rational::one();
    for (j, &mj) in m.parts().iter().enumerate() {
        acc *= rising(&(x - rat((j as i64) * a as i64, 2)), mj as u64);
    }
    acc
}

fn check_len(m: &Signature, p: &DomainParams) -> Result<()> {
    if m.len() > p.r as usize {
        return Err(Error::InvalidParams(format!("signature {m} has more than r = {} parts", p.r)));
    }
    Ok(())
}

/// π_m = Π_{i<j} (m_i − m_j + (j−i)a/2)/((j−i)a/2) · ((j−i+1)a/2)_{m_i−m_j} / ((j−i−1)a/2 + 1)_{m_i−m_j}.
pub fn pi_m(m: &Signature, p: &DomainParams) -> Result<Rational> {
    check_len(m, p)?;
    let r = p.r as usize;
    let mm = m.padded(r);
    let h = p.half_a();
    let mut acc = Rational::one();
    for i in 0..r {
        for j in i + 1..r {
            let gap = int((j - i) as i64);
            let diff = mm[i] - mm[j];
            let base = &gap * &h;
            acc *= (int(diff as i64) + &base) / &base;
            let up = (&gap + int(1)) * &h;
            let down = (&gap - int(1)) * &h + int(1);
            acc *= rising(&up, diff as u64) / rising(&down, diff as u64);
        }
    }
    Ok(acc)
}

/// d_m = (d/r)_m π_m / (q_Ω)_m, the dimension of the Peter–Weyl component.
pub fn dim_d_m(m: &Signature, p: &DomainParams) -> Result<Rational> {
    let pi = pi_m(m, p)?;
    Ok(pochhammer_rat(&p.d_over_r(), m, p.a) * pi / pochhammer_rat(&p.q_omega(), m, p.a))
}

type PolyCache = RwLock<HashMap<(Signature, u32, u32), Arc<SymPoly<Rational>>>>;

fn phi_cache() -> &'static PolyCache {
    static C: OnceLock<PolyCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Spherical polynomial φ_m: Jack P_m at α = 2/a in r variables, normalised to 1 at (1,…,1).
pub fn spherical_phi(m: &Signature, p: &DomainParams) -> Result<SymPoly<Rational>> {
    check_len(m, p)?;
    let key = (m.clone(), p.r, p.a);
    if let Some(f) = phi_cache().read().unwrap().get(&key) {
        return Ok((**f).clone());
    }
    let r = p.r as usize;
    let alpha = rat(2, p.a as i64);
    let jack: BTreeMap<Signature, Rational> = jack_p(m, &alpha);
    let mut at_one = Rational::zero();
    for (mu, c) in &jack {
        if mu.len() <= r {
            at_one += c * int(orbit_size(mu, r) as i64);
        }
    }
    let f = SymPoly::from_terms(r, jack.into_iter().filter(|(mu, _)| mu.len() <= r))
        .scale(&(Rational::one() / at_one));
    phi_cache().write().unwrap().insert(key, Arc::new(f.clone()));
    Ok(f)
}

/// K_m(te, e) = π_m/(q_Ω)_m · φ_m(t).
pub fn kernel_k(m: &Signature, p: &DomainParams) -> Result<SymPoly<Rational>> {
    let phi = spherical_phi(m, p)?;
    let c = pi_m(m, p)? / pochhammer_rat(&p.q_omega(), m, p.a);
    Ok(phi.scale(&c))
}

/// K_m for all m with m₁ ≤ max_n, read off recursively from
/// Π_j (1 − t_j)^n = Σ_{m₁ ≤ n} (−n)_m K_m and the determinant shift rule.
pub fn kernel_k_by_extraction(p: &DomainParams, max_n: u32) -> Result<BTreeMap<Signature, SymPoly<Rational>>> {
    if p.r > 3 {
        return Err(Error::Unsupported("extraction is implemented for rank ≤ 3".into()));
    }
    let r = p.r as usize;
    let qo = p.q_omega();
    let mut known: BTreeMap<Signature, SymPoly<Rational>> = BTreeMap::new();
    for n in 0..=max_n {
        let level: Vec<Signature> =
            gen_signatures(None, n, r).into_iter().filter(|s| s.first() == n).collect();
        let mut unknown = Vec::new();
        for m in &level {
            if m.len() == r && n > 0 {
                // K_m = e_r·K_{m−1^r} / Π_j (q_Ω − (j−1)a/2 + m_j − 1)
                let lower = m.sub_const(r, 1).unwrap();
                let mut c = Rational::one();
                for (j, &mj) in lower.padded(r).iter().enumerate() {
                    c *= &qo - rat((j as i64) * p.a as i64, 2) + int(mj as i64);
                }
                let k = known[&lower].shift_by_det(1).scale(&(Rational::one() / c));
                known.insert(m.clone(), k);
            } else {
                unknown.push(m.clone());
            }
        }
        let mut rest = binomial_product::<Rational>(r, n, &int(-1));
        for (m, k) in &known {
            let c = pochhammer_rat(&int(-(n as i64)), m, p.a);
            if !c.is_zero() {
                rest = rest.sub(&k.scale(&c));
            }
        }
        for m in unknown {
            let c = pochhammer_rat(&int(-(n as i64)), &m, p.a);
            let part = rest.homogeneous_part(m.weight());
            known.insert(m, part.scale(&(Rational::one() / c)));
        }
    }
    Ok(known)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::RatFun;
    use crate::symfunc::params::domain_params;

    fn sig(p: &[u32]) -> Signature {
        Signature::new(p).unwrap()
    }

    #[test]
    fn pochhammer_examples() {
        let nu = RatFun::nu();
        assert!(pochhammer_gen(&nu, &sig(&[]), 3).is_one());
        let v = pochhammer_gen(&nu, &sig(&[1, 1]), 3);
        let expect = &nu * &(&nu - &RatFun::from_rational(rat(3, 2)));
        assert_eq!(v, expect);
        assert_eq!(pochhammer_rat(&int(-1), &sig(&[1, 1]), 2), int(2));
    }

    #[test]
    fn pi_and_dimension() {
        for a in 1..6 {
            let p = domain_params(2, a, 1).unwrap();
            assert_eq!(pi_m(&sig(&[1]), &p).unwrap(), int(a as i64 + 2));
            assert_eq!(pi_m(&sig(&[]), &p).unwrap(), int(1));
            assert_eq!(dim_d_m(&sig(&[1]), &p).unwrap(), int(p.d as i64));
        }
    }

    #[test]
    fn rank_two_kernel_examples() {
        let p = domain_params(2, 4, 0).unwrap();
        let k11 = kernel_k(&sig(&[1, 1]), &p).unwrap();
        assert_eq!(k11.coeff(&sig(&[1, 1])), rat(2, 6));
        let k21 = kernel_k(&sig(&[2, 1]), &p).unwrap();
        assert_eq!(k21.coeff(&sig(&[2, 1])), rat(2, 8));
        assert_eq!(kernel_k(&sig(&[]), &p).unwrap(), SymPoly::one(2));
    }

    #[test]
    fn extraction_agrees_small() {
        let p = domain_params(3, 2, 1).unwrap();
        let ex = kernel_k_by_extraction(&p, 2).unwrap();
        for (m, k) in &ex {
            assert_eq!(k, &kernel_k(m, &p).unwrap(), "K_{m}");
        }
    }
}
