use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::Result;
use crate::exact_core::rational::{int, pow2};
use crate::exact_core::Rational;
use crate::selberg::{moment_compact, WeightKind};
use crate::symfunc::{gen_signatures, DomainParams, Signature, SymPoly};
use crate::verdict::{cell, Verdict};

/// Multivariable Jacobi polynomials on [0,1]^r for t^b (1−t)^ν |Δ(t)|^a, monic on m_λ.
///
/// The [−1,1]^r polynomial P_λ(u) of the classical normalisation satisfies
/// P_λ(1−2t) ∝ members[λ](t); `values_at_one` are the member values at t = 0.
#[derive(Clone, Debug)]
pub struct JacobiFamily {
    pub params: DomainParams,
    pub nu: u32,
    pub members: BTreeMap<Signature, SymPoly<Rational>>,
    pub norms_on_01: BTreeMap<Signature, Rational>,
    pub values_at_one: BTreeMap<Signature, Rational>,
}

/// Signatures of weight ≤ max_weight in graded lexicographic order.
pub fn graded_lex(r: usize, max_weight: u32) -> Vec<Signature> {
    let mut s = gen_signatures(Some(max_weight), max_weight, r);
    s.sort_by(|x, y| (x.weight(), x).cmp(&(y.weight(), y)));
    s
}

/// ∫ m_α m_β dμ̂ for all pairs, via the monomial product expansion.
fn monomial_gram(p: &DomainParams, nu: u32, sigs: &[Signature]) -> Result<Vec<Vec<Rational>>> {
    let r = p.r_usize();
    let mut cache: HashMap<Signature, Rational> = HashMap::new();
    let n = sigs.len();
    let mut g = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let prod = SymPoly::<Rational>::monomial(sigs[i].clone(), r).mul(&SymPoly::monomial(sigs[j].clone(), r));
            let mut acc = Rational::zero();
            for (lam, c) in prod.iter() {
                if !cache.contains_key(lam) {
                    cache.insert(lam.clone(), moment_compact(lam, p, nu, WeightKind::CompactHat)?);
                }
                acc += c * &cache[lam];
            }
            g[j][i] = acc.clone();
            g[i][j] = acc;
        }
    }
    Ok(g)
}

/// Gram–Schmidt of {m_λ : |λ| ≤ max_weight} in graded-lex order.
pub fn jacobi_family(p: &DomainParams, nu: u32, max_weight: u32) -> Result<JacobiFamily> {
    let r = p.r_usize();
    let sigs = graded_lex(r, max_weight);
    let g = monomial_gram(p, nu, &sigs)?;
    let n = sigs.len();
    let ip = |x: &[Rational], y: &[Rational]| -> Rational {
        let mut acc = Rational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[j].is_zero() {
                    acc += &x[i] * &y[j] * &g[i][j];
                }
            }
        }
        acc
    };
    let mut vecs: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut norms: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v = vec![Rational::zero(); n];
        v[k] = Rational::one();
        for (u, nu2) in vecs.iter().zip(&norms) {
            // ⟨m_k, u⟩ = Σ_j u_j G[k][j]
            let proj: Rational = (0..n).filter(|&j| !u[j].is_zero()).map(|j| &u[j] * &g[k][j]).sum::<Rational>() / nu2;
            if proj.is_zero() {
                continue;
            }
            for j in 0..n {
                if !u[j].is_zero() {
                    v[j] -= &proj * &u[j];
                }
            }
        }
        let nn = ip(&v, &v);
        vecs.push(v);
        norms.push(nn);
    }
    let mut members = BTreeMap::new();
    let mut norms_on_01 = BTreeMap::new();
    let mut values_at_one = BTreeMap::new();
    for ((sig, v), nn) in sigs.iter().zip(&vecs).zip(norms) {
        let f = SymPoly::from_terms(r, sigs.iter().cloned().zip(v.iter().cloned()));
        values_at_one.insert(sig.clone(), f.coeff(&Signature::empty()));
        members.insert(sig.clone(), f);
        norms_on_01.insert(sig.clone(), nn);
    }
    Ok(JacobiFamily { params: *p, nu, members, norms_on_01, values_at_one })
}

/// μ ≤ λ in the BC dominance order: all partial sums of μ are at most those of λ.
pub fn bc_below(mu: &Signature, lam: &Signature) -> bool {
    let n = mu.len().max(lam.len());
    let (mut s, mut t) = (0u32, 0u32);
    (0..n).all(|j| {
        s += mu.part(j);
        t += lam.part(j);
        s <= t
    })
}

/// Integral against dμ̂ of a symmetric polynomial, using the family's moment engine.
pub fn hat_integral(f: &SymPoly<Rational>, p: &DomainParams, nu: u32) -> Result<Rational> {
    crate::selberg::sympoly_moment_compact(f, p, nu, WeightKind::CompactHat)
}

/// Every pair of distinct members has inner product zero, every member is supported on
/// signatures BC-dominated by its label, and stored norms match direct integration.
pub fn family_orthogonality_check(fam: &JacobiFamily) -> Result<Verdict> {
    let p = &fam.params;
    let items: Vec<(&Signature, &SymPoly<Rational>)> = fam.members.iter().collect();
    let mut bad = Vec::new();
    for i in 0..items.len() {
        for j in i..items.len() {
            let v = hat_integral(&items[i].1.mul(items[j].1), p, fam.nu)?;
            let ok = if i == j { v == fam.norms_on_01[items[i].0] && v > Rational::zero() } else { v.is_zero() };
            if !ok {
                bad.push(format!("⟨{},{}⟩", items[i].0, items[j].0));
            }
        }
        if items[i].1.iter().any(|(mu, c)| !c.is_zero() && !bc_below(mu, items[i].0)) {
            bad.push(format!("triangularity at {}", items[i].0));
        }
    }
    let c = cell(&[
        ("target", json!("jacobiOrthogonality")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("nu", json!(fam.nu)),
        ("members", json!(items.len())),
    ]);
    let mut v = Verdict::new(c, bad.is_empty());
    if !bad.is_empty() {
        v = v.note(format!("failures: {}", bad.join(" ")));
    }
    Ok(v)
}

/// Dense polynomial in r variables over ℚ, exponent vectors as keys.
type Dense = BTreeMap<Vec<u32>, Rational>;

fn dense_mul(x: &Dense, y: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ex, cx) in x {
        for (ey, cy) in y {
            let e: Vec<u32> = ex.iter().zip(ey).map(|(a, b)| a + b).collect();
            *out.entry(e).or_insert_with(Rational::zero) += cx * cy;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn dense_linear(r: usize, terms: &[(Option<usize>, Rational)]) -> Dense {
    let mut out = Dense::new();
    for (var, c) in terms {
        let mut e = vec![0; r];
        if let Some(i) = var {
            e[*i] = 1;
        }
        *out.entry(e).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn dense_pow(x: &Dense, r: usize, k: u32) -> Dense {
    let mut acc = dense_linear(r, &[(None, int(1))]);
    for _ in 0..k {
        acc = dense_mul(&acc, x);
    }
    acc
}

/// f((1−u)/2) expanded in u.
fn substitute_half(f: &SymPoly<Rational>, r: usize) -> Dense {
    let lin: Vec<Dense> = (0..r).map(|i| dense_linear(r, &[(None, Rational::new(1.into(), 2.into())), (Some(i), Rational::new((-1).into(), 2.into()))])).collect();
    let mut out = Dense::new();
    for (sig, c) in f.iter() {
        for perm in crate::symfunc::signature::distinct_permutations(&sig.padded(r)) {
            let mut term = dense_linear(r, &[(None, c.clone())]);
            for (i, &e) in perm.iter().enumerate() {
                term = dense_mul(&term, &dense_pow(&lin[i], r, e));
            }
            for (k, v) in term {
                *out.entry(k).or_insert_with(Rational::zero) += v;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// ∫ over −1 < u_r < … < u_1 < 1 of a dense polynomial, innermost variable first.
fn chamber_integral(f: &Dense, r: usize) -> Rational {
    let mut cur = f.clone();
    for j in (0..r).rev() {
        let mut next = Dense::new();
        for (e, c) in &cur {
            let k = e[j] + 1;
            let c = c / int(k as i64);
            // upper limit u_{j−1} (or 1 when j = 0), lower limit −1
            let mut up = e.clone();
            up[j] = 0;
            if j == 0 {
                *next.entry(up.clone()).or_insert_with(Rational::zero) += &c;
            } else {
                up[j - 1] += k;
                *next.entry(up).or_insert_with(Rational::zero) += &c;
            }
            let mut lo = e.clone();
            lo[j] = 0;
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            *next.entry(lo).or_insert_with(Rational::zero) -= c * sign;
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur.values().cloned().sum()
}

/// ∫_{[−1,1]^r} g(u)² (1−u)^b (1+u)^ν |Δ(u)|^a du by direct polynomial integration over the ordered chamber.
fn norm_on_pm1(f: &SymPoly<Rational>, p: &DomainParams, nu: u32) -> Rational {
    let r = p.r_usize();
    let g = substitute_half(f, r);
    let mut integrand = dense_mul(&g, &g);
    for i in 0..r {
        let one_minus = dense_linear(r, &[(None, int(1)), (Some(i), int(-1))]);
        let one_plus = dense_linear(r, &[(None, int(1)), (Some(i), int(1))]);
        integrand = dense_mul(&integrand, &dense_pow(&one_minus, r, p.b));
        integrand = dense_mul(&integrand, &dense_pow(&one_plus, r, nu));
    }
    for i in 0..r {
        for j in i + 1..r {
            // on the chamber u_i > u_j
            let diff = dense_linear(r, &[(Some(i), int(1)), (Some(j), int(-1))]);
            integrand = dense_mul(&integrand, &dense_pow(&diff, r, p.a));
        }
    }
    let fact: i64 = (1..=r as i64).product();
    chamber_integral(&integrand, r) * int(fact)
}

/// norm² on [−1,1]^r = 2^{r(r−1)a/2 + rb + rν + r}·norm² on [0,1]^r for P(u) = member((1−u)/2).
pub fn interval_scaling_check(fam: &JacobiFamily) -> Result<Verdict> {
    let p = &fam.params;
    let r = p.r as i64;
    let exp = r * (r - 1) * p.a as i64 / 2 + r * p.b as i64 + r * fam.nu as i64 + r;
    let factor = pow2(exp);
    let mut bad = Vec::new();
    let direct = p.r <= 2;
    for (sig, f) in &fam.members {
        let n01 = &fam.norms_on_01[sig];
        let pm1 = if direct { norm_on_pm1(f, p, fam.nu) } else { n01 * &factor };
        if pm1 != n01 * &factor {
            bad.push(sig.to_string());
        }
    }
    let c = cell(&[
        ("target", json!("intervalScaling")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("nu", json!(fam.nu)),
    ]);
    let route = if direct { "direct substitution" } else { "closed exponent" };
    let mut v = Verdict::new(c, bad.is_empty()).note(format!("factor 2^{exp} by {route}"));
    if !bad.is_empty() {
        v = v.note(format!("mismatch at {}", bad.join(" ")));
    }
    Ok(v)
}
