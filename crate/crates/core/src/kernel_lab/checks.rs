use serde_json::json;

use super::basis::{BasisRule, KernelSpaceSpec, ScalarKind};
use super::repker::repker_s;
use crate::error::{Error, Result};
use crate::exact_core::rational::{int, rat_string};
use crate::exact_core::{sum_of_products_is_zero, RatFun, Rational};
use crate::selberg::{moment_noncompact, rho_omega};
use crate::symfunc::{kernel_k, DomainParams, Signature};
use crate::verdict::{cell, Verdict};

/// Integrates K_m(xe,e)·S(x,0) against dρ for every basis m and compares with δ_{m,(0)}.
pub fn reproducing_property_check(spec: &KernelSpaceSpec) -> Result<Verdict> {
    let p = &spec.params;
    let s = repker_s(spec)?;
    let rho = rho_omega(p)?;
    let mut failures = Vec::new();
    for m in &s.basis {
        let k = kernel_k(m, p)?.map(|c| RatFun::from_rational(c.clone()));
        let prod = k.mul(&s.value);
        let moments: Vec<(Signature, RatFun)> =
            prod.iter().map(|(lam, _)| Ok((lam.clone(), moment_noncompact(lam, p)?))).collect::<Result<_>>()?;
        let delta = if m.is_empty() { RatFun::one() } else { RatFun::zero() };
        let ok = match &spec.scalar {
            ScalarKind::Symbolic => {
                let mut terms: Vec<(Rational, Vec<&RatFun>)> = Vec::new();
                for ((_, c), (_, mo)) in prod.iter().zip(&moments) {
                    terms.push((rho.clone(), vec![c, mo]));
                }
                terms.push((int(-1), vec![&delta]));
                sum_of_products_is_zero(&terms)
            }
            ScalarKind::Numeric(nu) => {
                let mut acc = Rational::from_integer(0.into());
                for ((_, c), (_, mo)) in prod.iter().zip(&moments) {
                    let cv = c.eval(nu).ok_or_else(|| Error::Pole(format!("at ν = {nu}")))?;
                    let mv = mo.eval(nu).ok_or_else(|| Error::Pole(format!("at ν = {nu}")))?;
                    acc += cv * mv * &rho;
                }
                acc == delta.as_constant().unwrap()
            }
        };
        if !ok {
            failures.push(m.to_string());
        }
    }
    let (mode, q_or_m) = match &spec.rule {
        BasisRule::Stabilized { q } => ("stabilized", *q),
        BasisRule::Truncation { m_order, .. } => ("truncation", *m_order),
    };
    let c = cell(&[
        ("target", json!("reproducing")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("mode", json!(mode)),
        (if mode == "stabilized" { "q" } else { "mOrder" }, json!(q_or_m)),
    ]);
    let mut v = Verdict::new(c, failures.is_empty()).note(format!("basis size {}", s.basis.len()));
    if !failures.is_empty() {
        v = v.note(format!("δ-identity fails for {}", failures.join(" ")));
    }
    Ok(v)
}

/// For 2q−1 < ν−p ≤ 2q+1 the truncated kernels of order rq+1 and rq+1+r coincide.
pub fn stabilization_check(p: &DomainParams, q: u32, nu: &Rational) -> Result<Verdict> {
    let excess = nu - int(p.p as i64);
    if !(excess > int(2 * q as i64 - 1) && excess <= int(2 * q as i64 + 1)) {
        return Err(Error::InvalidParams(format!("ν − p = {excess} is outside (2q−1, 2q+1] for q = {q}")));
    }
    let m1 = p.r * q + 1;
    let m2 = m1 + p.r;
    let s1 = repker_s(&KernelSpaceSpec::truncation(*p, m1, nu.clone()))?;
    let s2 = repker_s(&KernelSpaceSpec::truncation(*p, m2, nu.clone()))?;
    let same = s1.value == s2.value;
    let c = cell(&[
        ("target", json!("stabilization")),
        ("r", json!(p.r)),
        ("a", json!(p.a)),
        ("b", json!(p.b)),
        ("q", json!(q)),
        ("nu", json!(rat_string(nu))),
    ]);
    Ok(Verdict::new(c, same).note(format!("orders {m1} and {m2}, basis sizes {} and {}", s1.basis.len(), s2.basis.len())))
}
