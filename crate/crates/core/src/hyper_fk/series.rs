use crate::error::{Error, Result};
use crate::exact_core::{RatFun, Rational};
use crate::symfunc::{gen_signatures, kernel_k, pi_m, pochhammer_gen, pochhammer_rat, DomainParams, Signature, SymPoly};

/// Which signatures a finite FK series runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesCap {
    /// m₁ ≤ cap
    FirstPart(u32),
    /// |m| ≤ cap
    Degree(u32),
}

/// Σ_m Π(upper)_m / Π(lower)_m · K_m(te, e), truncated by `cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct FkSeriesSpec {
    pub upper: Vec<RatFun>,
    pub lower: Vec<RatFun>,
    pub params: DomainParams,
    pub cap: SeriesCap,
}

impl FkSeriesSpec {
    /// Terminating series: some upper parameter must be a constant −q with q ∈ ℕ.
    pub fn terminating(upper: Vec<RatFun>, lower: Vec<RatFun>, params: DomainParams) -> Result<Self> {
        let q = upper
            .iter()
            .filter_map(|u| u.as_constant())
            .filter(|c| c.is_integer() && *c <= Rational::from_integer(0.into()))
            .map(|c| (-c).to_integer().try_into().unwrap_or(u32::MAX))
            .min()
            .ok_or_else(|| Error::InvalidParams("no upper parameter is a nonpositive integer".into()))?;
        Ok(FkSeriesSpec { upper, lower, params, cap: SeriesCap::FirstPart(q) })
    }

    pub fn with_cap(upper: Vec<RatFun>, lower: Vec<RatFun>, params: DomainParams, cap: SeriesCap) -> Self {
        FkSeriesSpec { upper, lower, params, cap }
    }

    fn signatures(&self) -> Vec<Signature> {
        let r = self.params.r_usize();
        match self.cap {
            SeriesCap::FirstPart(q) => gen_signatures(None, q, r),
            SeriesCap::Degree(n) => gen_signatures(Some(n), n, r),
        }
    }

    /// Π(upper)_m / Π(lower)_m
    pub fn coefficient(&self, m: &Signature) -> Result<RatFun> {
        let a = self.params.a;
        let mut num = RatFun::one();
        for u in &self.upper {
            num = &num * &pochhammer_gen(u, m, a);
        }
        if num.is_zero() {
            return Ok(num);
        }
        let mut den = RatFun::one();
        for l in &self.lower {
            den = &den * &pochhammer_gen(l, m, a);
        }
        if den.is_zero() {
            return Err(Error::Pole(format!("lower Pochhammer vanishes at m = {m}")));
        }
        num.checked_div(&den)
    }
}

/// The series as a symmetric polynomial in t.
pub fn fk_series(spec: &FkSeriesSpec) -> Result<SymPoly<RatFun>> {
    let mut out = SymPoly::zero(spec.params.r_usize());
    for m in spec.signatures() {
        let c = spec.coefficient(&m)?;
        if c.is_zero() {
            continue;
        }
        let k = kernel_k(&m, &spec.params)?;
        out = out.add(&k.map(|x| c.scale(x)));
    }
    Ok(out)
}

/// The series evaluated at t = e, using K_m(e, e) = π_m/(q_Ω)_m.
pub fn fk_series_at_e(spec: &FkSeriesSpec) -> Result<RatFun> {
    let p = &spec.params;
    let mut acc = RatFun::zero();
    for m in spec.signatures() {
        let c = spec.coefficient(&m)?;
        if c.is_zero() {
            continue;
        }
        let k = pi_m(&m, p)? / pochhammer_rat(&p.q_omega(), &m, p.a);
        acc = &acc + &c.scale(&k);
    }
    Ok(acc)
}

/// ₂F₁(α, β; γ; t) summed over m₁ ≤ cap.
pub fn fk_2f1(alpha: &RatFun, beta: &RatFun, gamma: &RatFun, params: &DomainParams, cap: u32) -> Result<SymPoly<RatFun>> {
    let spec = FkSeriesSpec::with_cap(
        vec![alpha.clone(), beta.clone()],
        vec![gamma.clone()],
        *params,
        SeriesCap::FirstPart(cap),
    );
    fk_series(&spec)
}

/// (1−m)_{(m−1,1)}, the coefficient of K_{(m−1,1)} in Π(1+x_j)^{m−1} = Σ_n (1−m)_n K_n(−x).
pub fn remark_vn_coefficient(params: &DomainParams, m: u32) -> Result<Rational> {
    if params.r < 2 || m < 2 {
        return Err(Error::InvalidParams("needs r ≥ 2 and m ≥ 2".into()));
    }
    let sig = Signature::new(&[m - 1, 1])?;
    Ok(pochhammer_rat(&Rational::from_integer((1 - m as i64).into()), &sig, params.a))
}
