use serde_json::json;

use super::constants::{c_nu, c_q_nu_form, conjecture_beta, ConjectureForm};
use super::series::{fk_2f1, fk_series_at_e, FkSeriesSpec};
use crate::error::{Error, Result};
use crate::exact_core::rational::int;
use crate::exact_core::{RatFun, Scalar};
use crate::kernel_lab::{repker_s, to_one_minus_t_chart, KernelSpaceSpec};
use crate::selberg::{rho_omega, sympoly_moment_noncompact_nu};
use crate::symfunc::{binomial_product, DomainParams, Signature, SymPoly};
use crate::verdict::{cell, Verdict};

/// Outcome of comparing two symmetric polynomials up to a scalar factor.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeComparison<S = RatFun> {
    /// lhs = ratio · rhs when proportional.
    pub ratio: Option<S>,
    /// First signature at which proportionality breaks.
    pub first_mismatch: Option<Signature>,
}

impl<S> ShapeComparison<S> {
    pub fn matches(&self) -> bool {
        self.ratio.is_some()
    }
}

/// Decides whether lhs = c·rhs for a single c, coefficientwise over all signatures.
pub fn compare_shape<S: Scalar>(lhs: &SymPoly<S>, rhs: &SymPoly<S>) -> ShapeComparison<S> {
    let mut sigs: Vec<&Signature> = lhs.iter().map(|(s, _)| s).chain(rhs.iter().map(|(s, _)| s)).collect();
    sigs.sort();
    sigs.dedup();
    let mut ratio: Option<S> = None;
    for s in sigs {
        let (l, r) = (lhs.coeff(s), rhs.coeff(s));
        let ok = match (&ratio, r.recip()) {
            (_, None) => l.is_zero(),
            (None, Some(ri)) => {
                ratio = Some(l.times(&ri));
                !l.is_zero()
            }
            (Some(c), Some(_)) => l == c.times(&r),
        };
        if !ok {
            return ShapeComparison { ratio: None, first_mismatch: Some(s.clone()) };
        }
    }
    ShapeComparison { ratio: Some(ratio.unwrap_or_else(S::one)), first_mismatch: None }
}

/// c^q_ν·₂F₁(−q, β; p; −x) as a symmetric polynomial in x (coefficients include π^d·c^q_ν).
pub fn conjectured_kernel(p: &DomainParams, q: u32, form: ConjectureForm) -> Result<(RatFun, SymPoly<RatFun>)> {
    let beta = conjecture_beta(p, q, form);
    let f = fk_2f1(&RatFun::from_int(-(q as i64)), &beta, &RatFun::from_int(p.p as i64), p, q)?.negate_vars();
    Ok((c_q_nu_form(p, q, form)?, f))
}

fn window_note(p: &DomainParams, q: u32) -> String {
    format!("stabilized window {} < ν ≤ {}", p.p as i64 - 1 + 2 * q as i64, p.p as i64 + 1 + 2 * q as i64)
}

/// Compares the Grammian kernel on {K_m : m₁ ≤ q} with the conjectured c^q_ν·₂F₁(−q, β; p; −x).
pub fn conjecture_verify(p: &DomainParams, q: u32) -> Result<Verdict> {
    let s = repker_s(&KernelSpaceSpec::stabilized(*p, q))?;
    let c = cell(&[
        ("target", json!("conjecture")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("q", json!(q)),
    ]);
    let mut outcome = Vec::new();
    for form in [ConjectureForm::Printed, ConjectureForm::RankAdjusted] {
        let (cq, f) = conjectured_kernel(p, q, form)?;
        let cmp = compare_shape(&s.value, &f);
        let ratio = match &cmp.ratio {
            Some(k) => Some(k.checked_div(&cq)?),
            None => None,
        };
        outcome.push((form, cmp, ratio));
    }
    let (_, printed, ratio) = &outcome[0];
    let pass = ratio.as_ref().is_some_and(|k| k.is_one());
    let mut v = Verdict::new(c, pass);
    v.shape_match = Some(printed.matches());
    v.constant_ratio = ratio.clone();
    if let Some(m) = &printed.first_mismatch {
        v = v.note(format!("shape differs first at m = {m}"));
    }
    let (_, adj, adj_ratio) = &outcome[1];
    let adj_text = match (adj.matches(), adj_ratio) {
        (true, Some(k)) if k.is_one() => "shape matches, constantRatio = 1".to_string(),
        (true, Some(k)) => format!("shape matches, constantRatio = {k}"),
        _ => format!("shape differs first at m = {}", adj.first_mismatch.as_ref().map_or("?".into(), |m| m.to_string())),
    };
    v = v.note(format!("rankAdjusted form (2r → (r−1)a+2): {adj_text}")).detail(
        "rankAdjusted",
        json!({
            "shapeMatch": adj.matches(),
            "constantRatio": adj_ratio.as_ref().map(|k| k.to_json()),
            "ratioIsOne": adj_ratio.as_ref().is_some_and(|k| k.is_one()),
        }),
    );
    Ok(v.note(window_note(p, q)).note(format!("basis size {}", s.basis.len())))
}

/// ∫₂F₁(−q, β; p; −x)dρ against (1/c_{ν−q})·₃F₂(−q, b+ν−p−q+2r, d/r; p, ν−q; e).
pub fn prop_pp_identity(p: &DomainParams, q: u32) -> Result<Verdict> {
    let beta = conjecture_beta(p, q, ConjectureForm::Printed);
    let f = fk_2f1(&RatFun::from_int(-(q as i64)), &beta, &RatFun::from_int(p.p as i64), p, q)?.negate_vars();
    let lhs = sympoly_moment_noncompact_nu(&f, p)?.scale(&rho_omega(p)?);
    let shift = -(p.p as i64) - q as i64 + 2 * p.r as i64 + p.b as i64;
    let spec = FkSeriesSpec::terminating(
        vec![RatFun::from_int(-(q as i64)), RatFun::affine(&int(1), &int(shift)), RatFun::from_rational(p.d_over_r())],
        vec![RatFun::from_int(p.p as i64), RatFun::affine(&int(1), &int(-(q as i64)))],
        *p,
    )?;
    let rhs = fk_series_at_e(&spec)?.checked_div(&c_nu(p)?.shift(&int(-(q as i64))))?;
    let c = cell(&[
        ("target", json!("proppp")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("q", json!(q)),
    ]);
    let ok = lhs == rhs;
    let mut v = Verdict::new(c, ok);
    if !ok {
        v = v.note(format!("lhs = {lhs}; rhs = {rhs}"));
    }
    Ok(v)
}

/// ₂F₁(−q, β; γ; t) = Π(1−t_j)^q·₂F₁(−q, γ−β; γ; t/(t−1)) as polynomials in t.
pub fn kummer_check(q: u32, beta: &RatFun, gamma: &RatFun, p: &DomainParams) -> Result<Verdict> {
    let alpha = RatFun::from_int(-(q as i64));
    let lhs = fk_2f1(&alpha, beta, gamma, p, q)?;
    // the right-hand ₂F₁ at t/(t−1) = −x with x = t/(1−t)
    let g = fk_2f1(&alpha, &(gamma - beta), gamma, p, q)?.negate_vars();
    let (k, h) = to_one_minus_t_chart(&g);
    let extra = q as i64 + k;
    if extra < 0 {
        return Err(Error::InvalidParams(format!("unexpected chart exponent {k}")));
    }
    let rhs = h.mul(&binomial_product(p.r_usize(), extra as u32, &RatFun::from_int(-1)));
    let c = cell(&[
        ("target", json!("kummer")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("q", json!(q)),
    ]);
    let ok = lhs == rhs;
    let mut v = Verdict::new(c, ok);
    if !ok {
        v = v.note(format!("first differing term: {}", lhs.sub(&rhs).iter().next().map_or(String::new(), |(m, _)| m.to_string())));
    }
    Ok(v)
}
