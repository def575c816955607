//! Unit-ball oracles. Polynomials are in one variable (t or x) with coefficients in ℚ(s),
//! where s is carried as the indeterminate of `RatFun`.

use serde_json::json;

use super::conjecture::compare_shape;
use crate::error::{Error, Result};
use crate::exact_core::rational::{big, binomial, factorial, int, rat_string, rising};
use crate::exact_core::{PolyNu, RatFun, Rational};
use crate::kernel_lab::{repker_s, KernelSpaceSpec};
use crate::selberg::{rho_omega, sympoly_moment_noncompact};
use crate::symfunc::{ball, Signature, SymPoly};
use crate::verdict::{cell, Verdict};

fn mono<S: crate::exact_core::Scalar>(k: u32, c: S) -> SymPoly<S> {
    let sig = if k == 0 { Signature::empty() } else { Signature::new(&[k]).unwrap() };
    SymPoly::from_terms(1, [(sig, c)])
}

/// (1 − t)^n in one variable.
fn one_minus_t_pow(n: u32) -> SymPoly<RatFun> {
    let mut out = SymPoly::zero(1);
    for k in 0..=n {
        let c = big(binomial(n as u64, k as u64)) * int(if k % 2 == 0 { 1 } else { -1 });
        out = out.add(&mono(k, RatFun::from_rational(c)));
    }
    out
}

/// π^d-free closed kernel Γ(q+s+d)/Γ(q+s)·P^{(d,s)}_{q−1}(1−2t), π-grade −1.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank1Kernel {
    pub poly: SymPoly<RatFun>,
    pub pi_grade: i32,
}

/// P^{(d,s)}_n(1−2t) = binom(n+d, d)·Σ_k (−n)_k (n+1+s+d)_k/((d+1)_k k!) t^k.
pub fn jacobi_at_one_minus_2t(d: u32, n: u32) -> SymPoly<RatFun> {
    let lead = big(binomial((n + d) as u64, d as u64));
    let mut out = SymPoly::zero(1);
    for k in 0..=n {
        let c = rising(&int(-(n as i64)), k as u64) * &lead
            / (rising(&int(d as i64 + 1), k as u64) * big(factorial(k as u64)));
        let sk = PolyNu::rising_linear(&int(1), &int((n + 1 + d) as i64), k as u64);
        out = out.add(&mono(k, RatFun::from_poly(sk.scale(&c))));
    }
    out
}

pub fn rank1_closed_kernel(d: u32, q_order: u32) -> Result<Rank1Kernel> {
    if d == 0 || q_order == 0 {
        return Err(Error::InvalidParams("needs d ≥ 1 and q ≥ 1".into()));
    }
    // Γ(q+s+d)/Γ(q+s) = (s+q)_d
    let g = RatFun::from_poly(PolyNu::rising_linear(&int(1), &int(q_order as i64), d as u64));
    let poly = jacobi_at_one_minus_2t(d, q_order - 1).map(|c| c * &g);
    Ok(Rank1Kernel { poly, pi_grade: -1 })
}

/// Coefficient families for the sum side of the rank-one Jacobi identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank1Family {
    /// π^d c_l(s) = (s−2l+1)·d·(s−l+2)_{d−1}/l!
    PrintedTo,
    /// π^d d₁(λ_(l), s+d+1) = (s−2l+1)·(d)_l·(s−l+2)_{d−1}/l!
    SphericalD1,
}

impl Rank1Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rank1Family::PrintedTo => "A",
            Rank1Family::SphericalD1 => "B",
        }
    }

    /// The coefficient with its argument shifted to s + shift.
    pub fn coefficient(&self, d: u32, l: u32, shift: i64) -> RatFun {
        let l64 = l as i64;
        let front = match self {
            Rank1Family::PrintedTo => int(d as i64),
            Rank1Family::SphericalD1 => rising(&int(d as i64), l as u64),
        } / big(factorial(l as u64));
        let lin = PolyNu::linear(&int(1), &int(shift - 2 * l64 + 1));
        let tail = PolyNu::rising_linear(&int(1), &int(shift - l64 + 2), d as u64 - 1);
        RatFun::from_poly(lin.mul(&tail).scale(&front))
    }
}

/// (1−t)^{q−1}·Σ_{l<q} c_l(s+2q−2)·₂F₁(−l, l−s−2q+1; d; t/(t−1)) as a polynomial in t.
pub fn rank1_sum_side(d: u32, q: u32, family: Rank1Family) -> SymPoly<RatFun> {
    let shift = 2 * q as i64 - 2;
    let mut out = SymPoly::zero(1);
    for l in 0..q {
        let cl = family.coefficient(d, l, shift);
        for k in 0..=l {
            // (−l)_k (β)_k/((d)_k k!) (−1)^k t^k (1−t)^{q−1−k}, β = l − s − 2q + 1
            let c = rising(&int(-(l as i64)), k as u64) / (rising(&int(d as i64), k as u64) * big(factorial(k as u64)))
                * int(if k % 2 == 0 { 1 } else { -1 });
            let beta_k = PolyNu::rising_linear(&int(-1), &int(l as i64 - 2 * q as i64 + 1), k as u64);
            let coef = &cl * &RatFun::from_poly(beta_k.scale(&c));
            out = out.add(&mono(k, coef).mul(&one_minus_t_pow(q - 1 - k)));
        }
    }
    out
}

/// Rank-one Jacobi identity adjudicated for both coefficient families; passes iff family B holds.
pub fn rank1_sum_identity(d: u32, q: u32) -> Result<Verdict> {
    let rhs = rank1_closed_kernel(d, q)?.poly;
    let c = cell(&[("target", json!("rank1Sum")), ("d", json!(d)), ("q", json!(q))]);
    let mut holds = Vec::new();
    let mut notes = Vec::new();
    for fam in [Rank1Family::SphericalD1, Rank1Family::PrintedTo] {
        let lhs = rank1_sum_side(d, q, fam);
        let ok = lhs == rhs;
        holds.push(ok);
        let text = if ok {
            "identity holds".to_string()
        } else {
            let cmp = compare_shape(&lhs, &rhs);
            match cmp.ratio {
                Some(k) => format!("fails; sum side = ({k})·closed side"),
                None => format!(
                    "fails; not proportional, first differing power t^{}",
                    cmp.first_mismatch.map_or(0, |m| m.first())
                ),
            }
        };
        notes.push(format!("family {}: {text}", fam.as_str()));
    }
    let mut v = Verdict::new(c, holds[0]);
    for n in notes {
        v = v.note(n);
    }
    Ok(v)
}

/// π^d d₁(λ_(l), ν) = (ν−d−2l)(d)_l Γ(ν−l)/(l! Γ(ν−d+1−l)) at rational ν.
pub fn rank1_d1(d: u32, l: u32, nu: &Rational) -> Rational {
    let l64 = l as i64;
    (nu - int(d as i64 + 2 * l64)) * rising(&int(d as i64), l as u64) * rising(&(nu - int(d as i64 - 1 + l64)), d as u64 - 1)
        / big(factorial(l as u64))
}

/// The l-th summand d₁·₂F₁(−l, d−ν+l; d; −x) as a polynomial in x.
pub fn rank1_spherical_term(d: u32, l: u32, nu: &Rational) -> SymPoly<Rational> {
    let d1 = rank1_d1(d, l, nu);
    let beta = int(d as i64 + l as i64) - nu;
    let mut out = SymPoly::zero(1);
    for k in 0..=l {
        let c = rising(&int(-(l as i64)), k as u64) * rising(&beta, k as u64)
            / (rising(&int(d as i64), k as u64) * big(factorial(k as u64)))
            * int(if k % 2 == 0 { 1 } else { -1 });
        out = out.add(&mono(k, c * &d1));
    }
    out
}

/// Grammian S^m_ν(x,0) on the ball against the spherical-function sum, plus pairwise orthogonality.
pub fn rank1_spherical_sum(d: u32, nu: &Rational, m_order: u32) -> Result<Verdict> {
    let p = ball(d)?;
    if *nu <= int(d as i64) || m_order == 0 {
        return Err(Error::InvalidParams("needs ν > d and m ≥ 1".into()));
    }
    let s = repker_s(&KernelSpaceSpec::truncation(p, m_order, nu.clone()))?;
    let grammian = s.value.map(|c| c.as_constant().expect("numeric kernel"));
    let half_gap = (nu - int(d as i64)) / int(2);
    let terms: Vec<SymPoly<Rational>> =
        (0..m_order).take_while(|&l| int(l as i64) < half_gap).map(|l| rank1_spherical_term(d, l, nu)).collect();
    let sum = terms.iter().fold(SymPoly::zero(1), |acc, t| acc.add(t));
    let rho = rho_omega(&p)?;
    let mut non_orth = Vec::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            let ip = sympoly_moment_noncompact(&terms[i].mul(&terms[j]), &p)?
                .eval(nu)
                .ok_or_else(|| Error::Pole(format!("moment at ν = {nu}")))?
                * &rho;
            if ip != int(0) {
                non_orth.push(format!("({i},{j})"));
            }
        }
    }
    let c = cell(&[
        ("target", json!("rank1Spherical")),
        ("d", json!(d)),
        ("nu", json!(rat_string(nu))),
        ("mOrder", json!(m_order)),
    ]);
    let same = grammian == sum;
    let mut v = Verdict::new(c, same && non_orth.is_empty()).note(format!("{} summands", terms.len()));
    if !same {
        v = v.note("Grammian kernel differs from the spherical sum");
    }
    if !non_orth.is_empty() {
        v = v.note(format!("non-orthogonal pairs {}", non_orth.join(" ")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;
    use crate::selberg::{selberg_total_mass, WeightKind};

    #[test]
    fn closed_kernel_order_one() {
        for d in 1..=3 {
            let k = rank1_closed_kernel(d, 1).unwrap();
            let expect = RatFun::from_poly(PolyNu::rising_linear(&int(1), &int(1), d as u64));
            assert_eq!(k.poly, SymPoly::constant(1, expect));
            assert_eq!(k.pi_grade, -1);
        }
    }

    #[test]
    fn jacobi_degree_one() {
        // P^{(d,s)}_1(1−2t) = (d+1) − (s+d+2)t
        let j = jacobi_at_one_minus_2t(3, 1);
        assert_eq!(j.coeff(&Signature::empty()), RatFun::from_int(4));
        assert_eq!(j.coeff(&Signature::new(&[1]).unwrap()), RatFun::affine(&int(-1), &int(-5)));
    }

    #[test]
    fn closed_kernel_is_unit_ball_constant() {
        // at q = 1 and ν = s+d+1 the constant is Γ(ν)/Γ(ν−d)
        let d = 2;
        let k = rank1_closed_kernel(d, 1).unwrap().poly.coeff(&Signature::empty());
        let nu = rat(17, 3);
        let expect = rising(&(&nu - int(d as i64)), d as u64);
        assert_eq!(k.eval(&(&nu - int(d as i64 + 1))).unwrap(), expect);
    }

    #[test]
    fn family_b_holds() {
        for d in 1..=3 {
            for q in 1..=3 {
                let v = rank1_sum_identity(d, q).unwrap();
                assert!(v.pass(), "d={d} q={q}: {:?}", v.notes);
            }
        }
    }

    #[test]
    fn family_a_at_d_one_q_one() {
        assert_eq!(rank1_sum_side(1, 1, Rank1Family::PrintedTo), rank1_closed_kernel(1, 1).unwrap().poly);
    }

    #[test]
    fn spherical_sum_examples() {
        let v = rank1_spherical_sum(1, &int(5), 2).unwrap();
        assert!(v.pass(), "{:?}", v.notes);
        for (d, nu, m) in [(2, rat(23, 3), 3), (3, rat(21, 2), 4), (1, int(9), 4)] {
            let v = rank1_spherical_sum(d, &nu, m).unwrap();
            assert!(v.pass(), "d={d} ν={nu} m={m}: {:?}", v.notes);
        }
    }

    #[test]
    fn first_term_is_reciprocal_mass() {
        let p = ball(2).unwrap();
        let nu = rat(13, 2);
        let mass = selberg_total_mass(&p, WeightKind::NoncompactRho).unwrap().eval(&nu).unwrap() * rho_omega(&p).unwrap();
        assert_eq!(rank1_d1(2, 0, &nu), int(1) / mass);
    }
}
