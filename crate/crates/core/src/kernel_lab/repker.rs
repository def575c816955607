use serde_json::{json, Value};

use super::basis::{basis_admissible, BasisRule, KernelSpaceSpec, ScalarKind};
use super::chart::to_one_minus_t_chart;
use super::gram::{gram_matrix_for, GramMatrix};
use crate::error::{Error, Result};
use crate::exact_core::rational::int;
use crate::exact_core::{linear_solve_exact, solve_rational, RatFun, Rational};
use crate::symfunc::{kernel_k, DomainParams, Signature, SymPoly};

/// S(x,0) as a symmetric polynomial in the cone coordinate x; true kernel is π^{−d}·value.
#[derive(Clone, Debug)]
pub struct KernelAtOrigin {
    pub value: SymPoly<RatFun>,
    pub pi_grade: i32,
    pub basis: Vec<Signature>,
    /// Row of G⁻¹ belonging to m = (0), i.e. the K_m coefficients.
    pub coeffs: Vec<RatFun>,
    pub spec: KernelSpaceSpec,
}

impl KernelAtOrigin {
    pub fn to_json(&self) -> Value {
        json!({
            "piGrade": self.pi_grade,
            "prefactorOneMinusTPower": 0,
            "poly": self.value.to_json(),
            "spec": self.spec.to_json(),
        })
    }
}

/// A kernel written as Π(1−t_j)^{prefactor}·poly(t).
#[derive(Clone, Debug)]
pub struct ChartKernel {
    pub prefactor: i64,
    pub poly: SymPoly<RatFun>,
    pub pi_grade: i32,
    pub spec: KernelSpaceSpec,
}

impl ChartKernel {
    pub fn to_json(&self) -> Value {
        json!({
            "piGrade": self.pi_grade,
            "prefactorOneMinusTPower": self.prefactor,
            "poly": self.poly.to_json(),
            "spec": self.spec.to_json(),
        })
    }
}

fn unit_vector<T: Clone>(n: usize, one: T, zero: T) -> Vec<T> {
    let mut v = vec![zero; n];
    v[0] = one;
    v
}

/// U(0)*G⁻¹U(x) for the span of {K_m : m ∈ basis}; basis[0] must be (0).
pub fn grammian_kernel(p: &DomainParams, basis: &[Signature]) -> Result<(Vec<RatFun>, SymPoly<RatFun>)> {
    let g = gram_matrix_for(p, basis)?;
    let c = solve_origin_row(&g)?;
    Ok((c.clone(), combine(p, basis, &c)?))
}

fn solve_origin_row(g: &GramMatrix) -> Result<Vec<RatFun>> {
    // U(0) = e₀ because K_m is homogeneous of degree |m|
    if g.basis.first() != Some(&Signature::empty()) {
        return Err(Error::InvalidParams("basis must start with the empty signature".into()));
    }
    let n = g.basis.len();
    linear_solve_exact(&g.entries, &unit_vector(n, RatFun::one(), RatFun::zero()))
}

fn combine(p: &DomainParams, basis: &[Signature], c: &[RatFun]) -> Result<SymPoly<RatFun>> {
    let mut out = SymPoly::zero(p.r_usize());
    for (m, cj) in basis.iter().zip(c) {
        let k = kernel_k(m, p)?;
        out = out.add(&k.map(|x| RatFun::from_rational(x.clone())).scale(cj));
    }
    Ok(out)
}

pub fn repker_s(spec: &KernelSpaceSpec) -> Result<KernelAtOrigin> {
    let basis = basis_admissible(spec)?;
    let p = &spec.params;
    let g = gram_matrix_for(p, &basis)?;
    let coeffs = match &spec.scalar {
        ScalarKind::Symbolic => solve_origin_row(&g)?,
        ScalarKind::Numeric(nu) => {
            let m: Vec<Vec<Rational>> = g
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.eval(nu).ok_or_else(|| Error::Pole(format!("Gram entry at ν = {nu}")))).collect())
                .collect::<Result<_>>()?;
            let n = basis.len();
            let x = solve_rational(&m, &unit_vector(n, int(1), int(0)))?;
            x.into_iter().map(RatFun::from_rational).collect()
        }
    };
    let value = combine(p, &basis, &coeffs)?;
    Ok(KernelAtOrigin { value, pi_grade: -1, basis, coeffs, spec: spec.clone() })
}

/// N(k√t e, 0) = S(t/(1−t), 0).
pub fn repker_n_origin(spec: &KernelSpaceSpec) -> Result<ChartKernel> {
    let s = repker_s(spec)?;
    let (k, poly) = to_one_minus_t_chart(&s.value);
    Ok(ChartKernel { prefactor: k, poly, pi_grade: -1, spec: spec.clone() })
}

/// P^m_ν(z,0) = h(z,z)^{m−1}·N^m_{ν+2m−2}(z,0), with h(z,z) = Π(1−t_j) on the chart.
pub fn repker_p_origin(spec: &KernelSpaceSpec, m_order: u32) -> Result<ChartKernel> {
    if m_order == 0 {
        return Err(Error::InvalidParams("order m must be at least 1".into()));
    }
    let shift = int(2 * m_order as i64 - 2);
    let (k, poly) = match (&spec.rule, &spec.scalar) {
        (BasisRule::Truncation { nu, .. }, _) => {
            let shifted = KernelSpaceSpec::truncation(spec.params, m_order, nu + &shift);
            let n = repker_n_origin(&shifted)?;
            (n.prefactor, n.poly)
        }
        (BasisRule::Stabilized { .. }, ScalarKind::Numeric(nu)) => {
            let shifted = KernelSpaceSpec { scalar: ScalarKind::Numeric(nu + &shift), ..spec.clone() };
            let n = repker_n_origin(&shifted)?;
            (n.prefactor, n.poly)
        }
        (BasisRule::Stabilized { .. }, ScalarKind::Symbolic) => {
            let n = repker_n_origin(spec)?;
            (n.prefactor, n.poly.map(|c| c.shift(&shift)))
        }
    };
    Ok(ChartKernel { prefactor: k + m_order as i64 - 1, poly, pi_grade: -1, spec: spec.clone() })
}
