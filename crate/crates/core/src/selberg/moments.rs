use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linsum::LinearSum;
use super::WeightKind;
use crate::error::{Error, Result};
use crate::exact_core::rational::{big, binomial, factorial, int};
use crate::exact_core::{RatFun, Rational};
use crate::symfunc::signature::{distinct_permutations, orbit_size, Signature};
use crate::symfunc::{DomainParams, SymPoly};

/// Default cap on intermediate monomials produced by the chamber expansion.
pub const DEFAULT_TERM_BUDGET: usize = 10_000_000;

type IntPoly = HashMap<Vec<u32>, BigInt>;
type DeltaCache = RwLock<HashMap<(usize, u32), Arc<IntPoly>>>;

fn delta_cache() -> &'static DeltaCache {
    static C: OnceLock<DeltaCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Π_{i<j} (x_i − x_j)^a as an integer polynomial in r variables.
fn delta_power(r: usize, a: u32) -> Arc<IntPoly> {
    if let Some(p) = delta_cache().read().unwrap().get(&(r, a)) {
        return p.clone();
    }
    let mut acc: IntPoly = HashMap::from([(vec![0; r], BigInt::one())]);
    for i in 0..r {
        for j in i + 1..r {
            let mut next: IntPoly = HashMap::new();
            for (e, c) in &acc {
                for k in 0..=a {
                    // (x_i − x_j)^a = Σ binom(a,k) x_i^{a−k} (−x_j)^k
                    let mut f = e.clone();
                    f[i] += a - k;
                    f[j] += k;
                    let mut t = c * binomial(a as u64, k as u64);
                    if k % 2 == 1 {
                        t = -t;
                    }
                    *next.entry(f).or_insert_with(BigInt::zero) += t;
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
    }
    let acc = Arc::new(acc);
    delta_cache().write().unwrap().insert((r, a), acc.clone());
    acc
}

fn check_sig(lam: &Signature, p: &DomainParams) -> Result<()> {
    if lam.len() > p.r as usize {
        return Err(Error::InvalidParams(format!("signature {lam} has more than r = {} parts", p.r)));
    }
    Ok(())
}

type MomentCache = RwLock<HashMap<(Signature, DomainParams), RatFun>>;

fn moment_cache() -> &'static MomentCache {
    static C: OnceLock<MomentCache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// ∫_{ℝ₊^r} m_λ(x) Π x_i^b (1+x_i)^{−ν} Π_{i<j}|x_i−x_j|^a dx in ℚ(ν), without c_Ω.
pub fn moment_noncompact(lam: &Signature, p: &DomainParams) -> Result<RatFun> {
    check_sig(lam, p)?;
    let key = (lam.clone(), *p);
    if let Some(v) = moment_cache().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = if p.a.is_multiple_of(2) {
        moment_noncompact_even(lam, p)?
    } else {
        moment_noncompact_chamber(lam, p, DEFAULT_TERM_BUDGET)?
    };
    moment_cache().write().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Even-a route: expand |Δ|^a and integrate products of one-dimensional Beta moments
/// ∫ x^k (1+x)^{−ν} dx = k!/((ν−1)(ν−2)⋯(ν−k−1)).
pub fn moment_noncompact_even(lam: &Signature, p: &DomainParams) -> Result<RatFun> {
    check_sig(lam, p)?;
    if p.a % 2 == 1 {
        return Err(Error::Unsupported("the factorised route needs even a".into()));
    }
    let r = p.r_usize();
    let lp = lam.padded(r);
    let mut groups: HashMap<Vec<u32>, BigInt> = HashMap::new();
    for (e, c) in delta_power(r, p.a).iter() {
        let mut k: Vec<u32> = (0..r).map(|i| lp[i] + p.b + e[i]).collect();
        k.sort_unstable();
        *groups.entry(k).or_insert_with(BigInt::zero) += c;
    }
    let mut sum = LinearSum::new();
    let mut factors = Vec::new();
    for (k, c) in groups {
        if c.is_zero() {
            continue;
        }
        let mut coef = c;
        factors.clear();
        for &ki in &k {
            coef *= factorial(ki as u64);
            for j in 1..=(ki as i64 + 1) {
                factors.push((1, -j));
            }
        }
        sum.add(big(coef), &factors);
    }
    Ok(sum.finish()?.scale(&int(orbit_size(lam, r) as i64)))
}

/// General-a route over the ordered chamber after x = t/(1−t) and s = 1−t.
pub fn moment_noncompact_chamber(lam: &Signature, p: &DomainParams, budget: usize) -> Result<RatFun> {
    check_sig(lam, p)?;
    let r = p.r_usize();
    let mut sum = LinearSum::new();
    let mut spent = 0usize;
    for perm in distinct_permutations(&lam.padded(r)) {
        let alpha: Vec<u32> = perm.iter().map(|x| x + p.b).collect();
        let pure: Vec<(i64, i64)> =
            alpha.iter().map(|&ai| (1, -((ai + 2 + (r as u32 - 1) * p.a) as i64))).collect();
        chamber_terms(&pure, &alpha, p.a, budget, &mut spent, &mut sum)?;
    }
    Ok(sum.finish()?.scale(&big(factorial(r as u64))))
}

/// Accumulates ∫_{s₁>…>s_r} Π s_i^{c_iν+k_i} (1−s_i)^{n_i} Π_{i<j}(s_i−s_j)^a ds
/// under s₁ = v, s_k = v·u₂⋯u_k.
fn chamber_terms(
    pure: &[(i64, i64)],
    poly_exp: &[u32],
    a: u32,
    budget: usize,
    spent: &mut usize,
    sum: &mut LinearSum,
) -> Result<()> {
    let r = pure.len();
    let mut big_c = vec![0i64; r];
    let mut big_k = vec![0i64; r];
    for k in 0..r {
        for i in k..r {
            big_c[k] += pure[i].0;
            big_k[k] += pure[i].1 + (a as i64) * (r - 1 - i) as i64;
        }
        big_k[k] += (r - 1 - k) as i64;
    }

    let mut poly: IntPoly = HashMap::from([(vec![0u32; r], BigInt::one())]);
    // (1 − v·u₂⋯u_i)^{n_i}
    for (i, &n) in poly_exp.iter().enumerate() {
        poly = times_binomial(&poly, 0, i, n, budget, spent)?;
    }
    // (1 − u_{i+1}⋯u_j)^a
    for i in 0..r {
        for j in i + 1..r {
            poly = times_binomial(&poly, i + 1, j, a, budget, spent)?;
        }
    }
    let mut factors = vec![(0i64, 0i64); r];
    for (e, c) in poly {
        for k in 0..r {
            factors[k] = (big_c[k], big_k[k] + e[k] as i64 + 1);
        }
        sum.add(big(c), &factors);
    }
    Ok(())
}

/// poly · (1 − Π_{lo≤k≤hi} y_k)^n
fn times_binomial(poly: &IntPoly, lo: usize, hi: usize, n: u32, budget: usize, spent: &mut usize) -> Result<IntPoly> {
    if n == 0 {
        return Ok(poly.clone());
    }
    *spent += poly.len() * (n as usize + 1);
    if *spent > budget {
        return Err(Error::TermBudget(format!("chamber expansion exceeded {budget} terms")));
    }
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|j| {
            let b = binomial(n as u64, j as u64);
            if j % 2 == 1 { -b } else { b }
        })
        .collect();
    let mut out: IntPoly = HashMap::with_capacity(poly.len() * (n as usize + 1));
    for (e, c) in poly {
        for (j, bj) in coeffs.iter().enumerate() {
            let mut f = e.clone();
            for y in f.iter_mut().take(hi + 1).skip(lo) {
                *y += j as u32;
            }
            *out.entry(f).or_insert_with(BigInt::zero) += c * bj;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Exponent of (1−t) for a compact weight kind at integer ν.
fn compact_exponent(p: &DomainParams, nu: u32, kind: WeightKind) -> Result<u32> {
    match kind {
        WeightKind::CompactHat => Ok(nu),
        WeightKind::CompactMu => nu
            .checked_sub(p.p)
            .ok_or_else(|| Error::InvalidParams(format!("compact Selberg weight needs ν ≥ p = {}", p.p))),
        WeightKind::NoncompactRho => Err(Error::InvalidParams("noncompact weight has no compact moment".into())),
    }
}

/// ∫_{[0,1]^r} m_λ(t) Π t_i^b (1−t_i)^E |Δ(t)|^a dt with E = ν (hat weight) or ν−p (Selberg weight).
pub fn moment_compact(lam: &Signature, p: &DomainParams, nu: u32, kind: WeightKind) -> Result<Rational> {
    check_sig(lam, p)?;
    let e = compact_exponent(p, nu, kind)?;
    if p.a.is_multiple_of(2) {
        compact_even(lam, p, e)
    } else {
        compact_chamber(lam, p, e, DEFAULT_TERM_BUDGET)
    }
}

fn compact_even(lam: &Signature, p: &DomainParams, e: u32) -> Result<Rational> {
    let r = p.r_usize();
    let lp = lam.padded(r);
    let ef = factorial(e as u64);
    let mut acc = Rational::zero();
    for (ex, c) in delta_power(r, p.a).iter() {
        let mut t = big(c.clone());
        for i in 0..r {
            let k = (lp[i] + p.b + ex[i]) as u64;
            t *= Rational::new(factorial(k) * &ef, factorial(k + e as u64 + 1));
        }
        acc += t;
    }
    Ok(acc * int(orbit_size(lam, r) as i64))
}

/// Chamber route for compact weights, valid for every integer a.
pub fn compact_chamber(lam: &Signature, p: &DomainParams, e: u32, budget: usize) -> Result<Rational> {
    check_sig(lam, p)?;
    let r = p.r_usize();
    let mut sum = LinearSum::new();
    let mut spent = 0usize;
    for perm in distinct_permutations(&lam.padded(r)) {
        let pure: Vec<(i64, i64)> = perm.iter().map(|x| (0, (x + p.b) as i64)).collect();
        let poly = vec![e; r];
        chamber_terms(&pure, &poly, p.a, budget, &mut spent, &mut sum)?;
    }
    let v = sum.finish()?.scale(&big(factorial(r as u64)));
    v.as_constant().ok_or_else(|| Error::Unsupported("compact moment did not reduce to a constant".into()))
}

/// Linear extension of the noncompact moment to a symmetric polynomial.
pub fn sympoly_moment_noncompact(f: &SymPoly<Rational>, p: &DomainParams) -> Result<RatFun> {
    let mut acc = RatFun::zero();
    for (lam, c) in f.iter() {
        acc = &acc + &moment_noncompact(lam, p)?.scale(c);
    }
    Ok(acc)
}

/// Same, for coefficients in ℚ(ν).
pub fn sympoly_moment_noncompact_nu(f: &SymPoly<RatFun>, p: &DomainParams) -> Result<RatFun> {
    let mut acc = RatFun::zero();
    for (lam, c) in f.iter() {
        acc = &acc + &(&moment_noncompact(lam, p)? * c);
    }
    Ok(acc)
}

pub fn sympoly_moment_compact(f: &SymPoly<Rational>, p: &DomainParams, nu: u32, kind: WeightKind) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (lam, c) in f.iter() {
        acc += moment_compact(lam, p, nu, kind)? * c;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;
    use crate::exact_core::PolyNu;
    use crate::symfunc::domain_params;

    fn sig(p: &[u32]) -> Signature {
        Signature::new(p).unwrap()
    }

    #[test]
    fn rank_one_beta() {
        for b in 0..3u32 {
            let p = domain_params(1, 2, b).unwrap();
            for k in 0..4u32 {
                let m = moment_noncompact(&sig(&[k]), &p).unwrap();
                let n = (k + b) as i64;
                let roots: Vec<Rational> = (1..=n + 1).map(int).collect();
                let expect = RatFun::new(PolyNu::constant(big(factorial(n as u64))), PolyNu::from_roots(&roots)).unwrap();
                assert_eq!(m, expect);
                assert_eq!(moment_noncompact_chamber(&sig(&[k]), &p, DEFAULT_TERM_BUDGET).unwrap(), expect);
            }
        }
    }

    #[test]
    fn rank_two_odd_total_mass() {
        let p = domain_params(2, 1, 0).unwrap();
        let m = moment_noncompact(&Signature::empty(), &p).unwrap();
        let den = PolyNu::from_roots(&[int(1), int(2)]).mul(&PolyNu::linear(&int(2), &int(-3)));
        assert_eq!(m, RatFun::new(PolyNu::constant(int(2)), den).unwrap());
    }

    #[test]
    fn even_paths_agree() {
        for (r, a, b) in [(2, 2, 0), (2, 4, 1), (3, 2, 0), (2, 2, 3)] {
            let p = domain_params(r, a, b).unwrap();
            for lam in crate::symfunc::gen_signatures(Some(3), 3, r as usize) {
                let x = moment_noncompact_even(&lam, &p).unwrap();
                let y = moment_noncompact_chamber(&lam, &p, DEFAULT_TERM_BUDGET).unwrap();
                assert_eq!(x, y, "λ={lam} r={r} a={a} b={b}");
            }
        }
    }

    #[test]
    fn compact_examples() {
        let p = domain_params(1, 2, 0).unwrap();
        assert_eq!(moment_compact(&sig(&[1]), &p, 0, WeightKind::CompactHat).unwrap(), rat(1, 2));
        let p = domain_params(2, 1, 0).unwrap();
        assert_eq!(moment_compact(&Signature::empty(), &p, 0, WeightKind::CompactHat).unwrap(), rat(1, 3));
        // ∫∫ (t₁−t₂)²(1−t₁)(1−t₂) = 2·(1/12·1/2 − (1/6)²) = 1/36
        let p = domain_params(2, 2, 0).unwrap();
        let v = moment_compact(&Signature::empty(), &p, 1, WeightKind::CompactHat).unwrap();
        assert_eq!(v, rat(1, 36));
        assert_eq!(compact_chamber(&Signature::empty(), &p, 1, DEFAULT_TERM_BUDGET).unwrap(), v);
    }

    #[test]
    fn compact_routes_agree() {
        let p = domain_params(3, 2, 1).unwrap();
        for lam in crate::symfunc::gen_signatures(Some(3), 2, 3) {
            for e in 0..3 {
                assert_eq!(compact_even(&lam, &p, e).unwrap(), compact_chamber(&lam, &p, e, DEFAULT_TERM_BUDGET).unwrap());
            }
        }
    }

    #[test]
    fn budget_aborts() {
        let p = domain_params(3, 3, 2).unwrap();
        let err = moment_noncompact_chamber(&sig(&[4, 2]), &p, 100).unwrap_err();
        assert!(matches!(err, Error::TermBudget(_)));
    }
}
