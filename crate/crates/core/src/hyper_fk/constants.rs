use crate::error::Result;
use crate::exact_core::rational::int;
use crate::exact_core::{GammaQuotient, RatFun, Rational};
use crate::symfunc::DomainParams;

/// Which reading of the constant 2r in the conjectured parameters is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureForm {
    /// β = −b − ν + 2p + q − 2r with the matching c^q_ν, as stated.
    Printed,
    /// 2r replaced by (r−1)a + 2 = p − b in both β and c^q_ν; identical to `Printed` when r = 1 or a = 2.
    RankAdjusted,
}

impl ConjectureForm {
    fn two_r(&self, p: &DomainParams) -> i64 {
        match self {
            ConjectureForm::Printed => 2 * p.r as i64,
            ConjectureForm::RankAdjusted => (p.p - p.b) as i64,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ConjectureForm::Printed => "printed",
            ConjectureForm::RankAdjusted => "rankAdjusted",
        }
    }
}

fn go(g: GammaQuotient, p: &DomainParams, c: u32, s: Rational, upper: bool) -> GammaQuotient {
    g.gamma_omega(p.r, &int(p.a as i64), c, s, upper)
}

/// π^d·c_ν = Γ_Ω(ν)/Γ_Ω(ν − d/r).
pub fn c_nu(p: &DomainParams) -> Result<RatFun> {
    let g = go(GammaQuotient::new(), p, 1, int(0), true);
    go(g, p, 1, -p.d_over_r(), false).reduce()
}

/// The second conjectured parameter β (first is −q, lower is p).
pub fn conjecture_beta(p: &DomainParams, q: u32, form: ConjectureForm) -> RatFun {
    let s = -(p.b as i64) + 2 * p.p as i64 + q as i64 - form.two_r(p);
    RatFun::affine(&int(-1), &int(s))
}

/// π^d·c^q_ν = Γ_Ω(ν−p−q+2r+b)Γ_Ω(q_Ω)Γ_Ω(p+q) / (Γ_Ω(ν−p−q+2r−q_Ω)Γ_Ω(q_Ω+q)Γ_Ω(p)).
pub fn c_q_nu_form(p: &DomainParams, q: u32, form: ConjectureForm) -> Result<RatFun> {
    let shift = int(-(p.p as i64) - q as i64 + form.two_r(p));
    let qo = p.q_omega();
    let mut g = GammaQuotient::new();
    g = go(g, p, 1, &shift + int(p.b as i64), true);
    g = go(g, p, 1, &shift - &qo, false);
    g = go(g, p, 0, qo.clone(), true);
    g = go(g, p, 0, &qo + int(q as i64), false);
    g = go(g, p, 0, int((p.p + q) as i64), true);
    g = go(g, p, 0, int(p.p as i64), false);
    g.reduce()
}

/// π^d·c^q_ν as stated; the true constant carries π-grade −1.
pub fn c_q_nu(p: &DomainParams, q: u32) -> Result<RatFun> {
    c_q_nu_form(p, q, ConjectureForm::Printed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::{big, binomial, rat};
    use crate::exact_core::PolyNu;
    use crate::symfunc::{ball, domain_params};

    #[test]
    fn rank_one_closed_form() {
        for d in 1..=4u32 {
            let p = ball(d).unwrap();
            for q in 0..=3u32 {
                // Γ(ν−q)/Γ(ν−q−d) · binom(d+q, q)
                let f = PolyNu::rising_linear(&int(1), &int(-(q as i64) - d as i64), d as u64)
                    .scale(&big(binomial((d + q) as u64, q as u64)));
                assert_eq!(c_q_nu(&p, q).unwrap(), RatFun::from_poly(f));
            }
        }
        let c = c_q_nu(&ball(1).unwrap(), 1).unwrap();
        assert_eq!(c, RatFun::affine(&int(2), &int(-4)));
    }

    #[test]
    fn q_zero_examples() {
        let p = domain_params(2, 1, 0).unwrap();
        let expect = PolyNu::from_roots(&[int(0), int(1), rat(1, 2)]);
        assert_eq!(c_q_nu(&p, 0).unwrap(), RatFun::from_poly(expect));
        let b = ball(3).unwrap();
        assert_eq!(c_q_nu(&b, 0).unwrap(), c_nu(&b).unwrap());
    }

    #[test]
    fn forms_agree_when_a_is_two() {
        for (r, b) in [(2, 0), (3, 1), (2, 3)] {
            let p = domain_params(r, 2, b).unwrap();
            for q in 0..3 {
                assert_eq!(
                    c_q_nu_form(&p, q, ConjectureForm::Printed).unwrap(),
                    c_q_nu_form(&p, q, ConjectureForm::RankAdjusted).unwrap()
                );
                assert_eq!(
                    conjecture_beta(&p, q, ConjectureForm::Printed),
                    conjecture_beta(&p, q, ConjectureForm::RankAdjusted)
                );
            }
        }
    }

    #[test]
    fn adjusted_q_zero_is_c_nu() {
        for (r, a, b) in [(2, 1, 0), (2, 2, 1), (3, 4, 2), (2, 5, 1)] {
            let p = domain_params(r, a, b).unwrap();
            assert_eq!(c_q_nu_form(&p, 0, ConjectureForm::RankAdjusted).unwrap(), c_nu(&p).unwrap());
        }
    }
}
