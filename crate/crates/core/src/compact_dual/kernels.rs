use num_traits::Zero;
use serde_json::json;

use super::family::{graded_lex, hat_integral, JacobiFamily};
use crate::error::{Error, Result};
use crate::exact_core::rational::int;
use crate::exact_core::{solve_rational, GammaQuotient, RatFun, Rational};
use crate::hyper_fk::{compare_shape, fk_2f1};
use crate::kernel_lab::to_one_plus_x_chart;
use crate::selberg::rho_omega;
use crate::symfunc::{gen_signatures, kernel_k, DomainParams, Signature, SymPoly};
use crate::verdict::{cell, Verdict};

/// A compact-dual kernel at the origin; the true kernel is π^{d·pi_grade}·value.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactKernel {
    pub value: SymPoly<Rational>,
    pub pi_grade: i32,
}

/// Kernel at 0 of span(basis) under dρ̂ = c_Ω·t^b(1−t)^ν|Δ|^a dt; basis[0] must be the constant 1.
fn grammian_hat(p: &DomainParams, nu: u32, basis: &[SymPoly<Rational>]) -> Result<CompactKernel> {
    let rho = rho_omega(p)?;
    let n = basis.len();
    let mut g = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = hat_integral(&basis[i].mul(&basis[j]), p, nu)? * &rho;
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    // evaluation at t = 0 picks the constant terms
    let e0: Vec<Rational> = basis.iter().map(|f| f.coeff(&Signature::empty())).collect();
    let c = solve_rational(&g, &e0)?;
    let mut value = SymPoly::zero(p.r_usize());
    for (f, ci) in basis.iter().zip(&c) {
        value = value.add(&f.scale(ci));
    }
    Ok(CompactKernel { value, pi_grade: -1 })
}

/// Ŝ^m_ν(t,0): Grammian kernel of {m_λ : |λ| < m} under dρ̂.
pub fn shat_kernel(p: &DomainParams, nu: u32, m_order: u32) -> Result<CompactKernel> {
    if m_order == 0 {
        return Err(Error::InvalidParams("order m must be at least 1".into()));
    }
    let r = p.r_usize();
    let basis: Vec<SymPoly<Rational>> =
        graded_lex(r, m_order - 1).into_iter().map(|s| SymPoly::monomial(s, r)).collect();
    grammian_hat(p, nu, &basis)
}

/// Σ_{|λ|<m} 2^{d+rν}P_λ(1)/‖P_λ‖²·P_λ(1−2t); the power of 2 cancels the [−1,1] norm factor, so
/// each term is member(0)·member(t)/‖member‖² with the norm on [0,1]^r.
pub fn shat_kernel_sq(fam: &JacobiFamily, m_order: u32) -> Result<SymPoly<Rational>> {
    let mut out = SymPoly::zero(fam.params.r_usize());
    let mut covered = 0;
    for (sig, f) in &fam.members {
        if sig.weight() >= m_order {
            continue;
        }
        covered = covered.max(sig.weight() + 1);
        out = out.add(&f.scale(&(&fam.values_at_one[sig] / &fam.norms_on_01[sig])));
    }
    if covered < m_order {
        return Err(Error::InvalidParams(format!("family stops below weight {}", m_order - 1)));
    }
    Ok(out)
}

/// The orthogonal-expansion route equals ρ_Ω times the Grammian route (the former is normalised without c_Ω).
pub fn shat_routes_check(fam: &JacobiFamily, m_order: u32) -> Result<Verdict> {
    let p = &fam.params;
    let sq = shat_kernel_sq(fam, m_order)?;
    let g = shat_kernel(p, fam.nu, m_order)?;
    let scaled = g.value.scale(&rho_omega(p)?);
    let c = cell(&[
        ("target", json!("shatRoutes")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("nu", json!(fam.nu)),
        ("mOrder", json!(m_order)),
    ]);
    let ok = sq == scaled;
    let mut v = Verdict::new(c, ok);
    if !ok {
        let cmp = compare_shape(&sq, &scaled);
        v = v.note(match cmp.ratio {
            Some(k) => format!("routes proportional with factor {k}"),
            None => "routes not proportional".to_string(),
        });
    }
    Ok(v)
}

/// N̂^m_ν(k√x e, 0) = Ŝ^m_ν(x/(1+x), 0) = Π(1+x_j)^{prefactor}·poly(x).
#[derive(Clone, Debug, PartialEq)]
pub struct CompactChartKernel {
    pub prefactor: i64,
    pub poly: SymPoly<Rational>,
    pub pi_grade: i32,
}

pub fn nhat_origin(p: &DomainParams, nu: u32, m_order: u32) -> Result<CompactChartKernel> {
    let s = shat_kernel(p, nu, m_order)?;
    let (k, poly) = to_one_plus_x_chart(&s.value);
    Ok(CompactChartKernel { prefactor: k, poly, pi_grade: s.pi_grade })
}

/// π^d·ĉ^q_ν = Γ_Ω(p+q)Γ_Ω(p+q+ν)Γ_Ω(q_Ω) / (Γ_Ω(p)Γ_Ω(q+q_Ω)Γ_Ω(q+q_Ω+ν)).
pub fn c_hat_q_nu(p: &DomainParams, nu: u32, q: u32) -> Result<Rational> {
    let a = int(p.a as i64);
    let qo = p.q_omega();
    let pq = int((p.p + q) as i64);
    let g = GammaQuotient::new()
        .gamma_omega(p.r, &a, 0, pq.clone(), true)
        .gamma_omega(p.r, &a, 0, &pq + int(nu as i64), true)
        .gamma_omega(p.r, &a, 0, qo.clone(), true)
        .gamma_omega(p.r, &a, 0, int(p.p as i64), false)
        .gamma_omega(p.r, &a, 0, &qo + int(q as i64), false)
        .gamma_omega(p.r, &a, 0, &qo + int((q + nu) as i64), false);
    let v = g.reduce()?;
    v.as_constant().ok_or_else(|| Error::IrreducibleGamma("ĉ is not constant".into()))
}

/// Q^q_ν: Grammian kernel of {K_m(te,e) : m₁ ≤ q} under dρ̂.
pub fn q_kernel(p: &DomainParams, nu: u32, q: u32) -> Result<CompactKernel> {
    let basis: Vec<SymPoly<Rational>> =
        gen_signatures(None, q, p.r_usize()).iter().map(|m| kernel_k(m, p)).collect::<Result<_>>()?;
    grammian_hat(p, nu, &basis)
}

/// Compares Q^q_ν with ĉ^q_ν·₂F₁(−q, ν+p+q; p; t) and with the orthogonal expansion over m₁ ≤ q.
pub fn gg_verify(p: &DomainParams, nu: u32, q: u32) -> Result<Verdict> {
    let qk = q_kernel(p, nu, q)?;
    let f = fk_2f1(&RatFun::from_int(-(q as i64)), &RatFun::from_int((nu + p.p + q) as i64), &RatFun::from_int(p.p as i64), p, q)?
        .map(|c| c.as_constant().expect("constant parameters"));
    let chat = c_hat_q_nu(p, nu, q)?;
    let cmp = compare_shape(&qk.value, &f);
    let ratio = cmp.ratio.as_ref().map(|k| k / &chat);
    let c = cell(&[
        ("target", json!("compactGG")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("nu", json!(nu)),
        ("q", json!(q)),
    ]);
    let pass = ratio.as_ref().is_some_and(|k| *k == int(1));
    let mut v = Verdict::new(c, pass);
    v.shape_match = Some(cmp.matches());
    v.constant_ratio = ratio.map(RatFun::from_rational);
    if let Some(m) = &cmp.first_mismatch {
        v = v.note(format!("shape differs first at m = {m}"));
    }
    // orthogonal expansion over the Jacobi members with λ₁ ≤ q (a finite set since λ₁ ≤ q bounds |λ| by rq)
    let fam = super::family::jacobi_family(p, nu, q * p.r)?;
    let mut expansion = SymPoly::zero(p.r_usize());
    for (sig, g) in &fam.members {
        if sig.first() <= q {
            expansion = expansion.add(&g.scale(&(&fam.values_at_one[sig] / &fam.norms_on_01[sig])));
        }
    }
    let expansion_ok = expansion == qk.value.scale(&rho_omega(p)?);
    v = v.note(format!("orthogonal expansion {}", if expansion_ok { "agrees" } else { "disagrees" }));
    if !expansion_ok {
        v.status = crate::verdict::Status::Fail;
    }
    Ok(v)
}
