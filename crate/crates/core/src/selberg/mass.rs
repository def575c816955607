use num_traits::One;

use super::WeightKind;
use crate::error::Result;
use crate::exact_core::rational::{int, rat};
use crate::exact_core::{GammaQuotient, RatFun, Rational};
use crate::symfunc::DomainParams;

/// ρ_Ω = c_Ω/π^d = Γ(a/2+1)^r / (Γ_Ω(ra/2+1)·Γ_Ω(d/r)).
pub fn rho_omega(p: &DomainParams) -> Result<Rational> {
    let a = int(p.a as i64);
    let half = rat(p.a as i64, 2);
    let mut g = GammaQuotient::new();
    for _ in 0..p.r {
        g = g.num(0, &half + int(1));
    }
    let g = g
        .gamma_omega(p.r, &a, 0, rat((p.r * p.a) as i64, 2) + int(1), false)
        .gamma_omega(p.r, &a, 0, p.d_over_r(), false);
    let v = g.reduce()?;
    Ok(v.as_constant().expect("constant Γ quotient"))
}

/// Selberg's product formula for ∫_{[0,1]^r} Π t^{α−1}(1−t)^{β−1}|Δ|^{2γ} with
/// α = b+1, γ = a/2 and β = ν−p+1 (Selberg weight, equal to the noncompact mass)
/// or β = ν+1 (hat weight).
pub fn selberg_total_mass(p: &DomainParams, kind: WeightKind) -> Result<RatFun> {
    let gamma = rat(p.a as i64, 2);
    let alpha = int(p.b as i64 + 1);
    let beta0 = match kind {
        WeightKind::NoncompactRho | WeightKind::CompactMu => int(1 - p.p as i64),
        WeightKind::CompactHat => int(1),
    };
    let mut g = GammaQuotient::new();
    for j in 0..p.r as i64 {
        let jg = &gamma * int(j);
        g = g
            .num(0, &alpha + &jg)
            .num(1, &beta0 + &jg)
            .num(0, Rational::one() + &gamma * int(j + 1))
            .den(1, &alpha + &beta0 + &gamma * int(p.r as i64 + j - 1))
            .den(0, Rational::one() + &gamma);
    }
    g.reduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::PolyNu;
    use crate::symfunc::domain_params;

    #[test]
    fn rho_values() {
        assert_eq!(rho_omega(&domain_params(2, 1, 0).unwrap()).unwrap(), int(1));
        assert_eq!(rho_omega(&domain_params(2, 2, 1).unwrap()).unwrap(), rat(1, 4));
        assert_eq!(rho_omega(&domain_params(1, 2, 0).unwrap()).unwrap(), int(1));
        assert_eq!(rho_omega(&domain_params(1, 2, 3).unwrap()).unwrap(), rat(1, 6));
    }

    #[test]
    fn mass_examples() {
        let m = selberg_total_mass(&domain_params(2, 1, 0).unwrap(), WeightKind::CompactMu).unwrap();
        let den = PolyNu::from_roots(&[int(1), int(2), rat(3, 2)]);
        assert_eq!(m, RatFun::new(PolyNu::one(), den).unwrap());
        let m = selberg_total_mass(&domain_params(2, 2, 1).unwrap(), WeightKind::CompactMu).unwrap();
        let den = PolyNu::from_roots(&[int(1), int(2), int(2), int(3), int(3), int(4)]);
        assert_eq!(m, RatFun::new(PolyNu::constant(int(4)), den).unwrap());
    }

    #[test]
    fn mass_equals_moment_and_gindikin_ratio() {
        use crate::selberg::moment_noncompact;
        use crate::symfunc::signature::Signature;
        for r in 1..=3u32 {
            for a in 1..=4u32 {
                for b in 0..=2u32 {
                    let p = domain_params(r, a, b).unwrap();
                    let mass = selberg_total_mass(&p, WeightKind::NoncompactRho).unwrap();
                    assert_eq!(moment_noncompact(&Signature::empty(), &p).unwrap(), mass, "r={r} a={a} b={b}");
                    // ρ_Ω · mass = Γ_Ω(ν − d/r)/Γ_Ω(ν)
                    let ratio = GammaQuotient::new()
                        .gamma_omega(p.r, &int(p.a as i64), 1, -p.d_over_r(), true)
                        .gamma_omega(p.r, &int(p.a as i64), 1, int(0), false)
                        .reduce()
                        .unwrap();
                    assert_eq!(mass.scale(&rho_omega(&p).unwrap()), ratio, "r={r} a={a} b={b}");
                }
            }
        }
    }
}
