use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_core::rational::{int, rat_string};
use crate::exact_core::Rational;
use crate::symfunc::{gen_signatures, DomainParams, Signature};

/// Which signatures span the kernel space.
#[derive(Clone, Debug, PartialEq)]
pub enum BasisRule {
    /// {m : |m| < m_order, m₁ < (ν−p+1)/2}; needs a numeric ν.
    Truncation { m_order: u32, nu: Rational },
    /// {m : m₁ ≤ q}
    Stabilized { q: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalarKind {
    Symbolic,
    Numeric(Rational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpaceSpec {
    pub params: DomainParams,
    pub rule: BasisRule,
    pub scalar: ScalarKind,
}

impl KernelSpaceSpec {
    pub fn stabilized(params: DomainParams, q: u32) -> Self {
        KernelSpaceSpec { params, rule: BasisRule::Stabilized { q }, scalar: ScalarKind::Symbolic }
    }

    pub fn truncation(params: DomainParams, m_order: u32, nu: Rational) -> Self {
        KernelSpaceSpec {
            params,
            rule: BasisRule::Truncation { m_order, nu: nu.clone() },
            scalar: ScalarKind::Numeric(nu),
        }
    }

    pub fn to_json(&self) -> Value {
        let p = &self.params;
        let rule = match &self.rule {
            BasisRule::Truncation { m_order, nu } => json!({"mode": "truncation", "mOrder": m_order, "nu": rat_string(nu)}),
            BasisRule::Stabilized { q } => json!({"mode": "stabilized", "q": q}),
        };
        let scalar = match &self.scalar {
            ScalarKind::Symbolic => Value::String("symbolic".into()),
            ScalarKind::Numeric(nu) => Value::String(rat_string(nu)),
        };
        json!({"r": p.r, "a": p.a, "b": p.b, "basis": rule, "nu": scalar})
    }
}

/// (ν − p + 1)/2, the bound on m₁ for square-integrability of K_m.
fn first_part_bound(p: &DomainParams, nu: &Rational) -> Rational {
    (nu - int(p.p as i64) + int(1)) / int(2)
}

pub fn basis_admissible(spec: &KernelSpaceSpec) -> Result<Vec<Signature>> {
    let r = spec.params.r_usize();
    match &spec.rule {
        BasisRule::Stabilized { q } => Ok(gen_signatures(None, *q, r)),
        BasisRule::Truncation { m_order, nu } => {
            let p = &spec.params;
            if *nu <= int(p.p as i64 - 1) {
                return Err(Error::NontrivialityFailure(format!("ν = {nu} ≤ p − 1 = {}", p.p - 1)));
            }
            if *m_order == 0 {
                return Err(Error::NontrivialityFailure("order m must be at least 1".into()));
            }
            let bound = first_part_bound(p, nu);
            let out: Vec<Signature> = gen_signatures(Some(m_order - 1), m_order - 1, r)
                .into_iter()
                .filter(|m| int(m.first() as i64) < bound)
                .collect();
            if out.is_empty() {
                return Err(Error::NontrivialityFailure("no admissible signature".into()));
            }
            Ok(out)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nontriviality {
    Trivial,
    ProperlyBigger,
    EqualToLower,
}

/// Whether the order-m space is zero, strictly larger than the order-(m−1) space, or equal to it.
pub fn nontriviality(p: &DomainParams, m_order: u32, nu: &Rational) -> Nontriviality {
    if *nu <= int(p.p as i64 - 1) || m_order == 0 {
        return Nontriviality::Trivial;
    }
    let bound = first_part_bound(p, nu);
    let w = m_order - 1;
    let fresh = gen_signatures(Some(w), w, p.r_usize())
        .into_iter()
        .any(|m| m.weight() == w && int(m.first() as i64) < bound);
    if fresh { Nontriviality::ProperlyBigger } else { Nontriviality::EqualToLower }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;
    use crate::symfunc::domain_params;

    #[test]
    fn basis_examples() {
        let p = domain_params(2, 3, 1).unwrap();
        assert_eq!(basis_admissible(&KernelSpaceSpec::stabilized(p, 0)).unwrap(), vec![Signature::empty()]);
        let s = KernelSpaceSpec::truncation(p, 2, int(p.p as i64 + 2));
        assert_eq!(basis_admissible(&s).unwrap(), vec![Signature::empty(), Signature::new(&[1]).unwrap()]);
        let p3 = domain_params(3, 2, 0).unwrap();
        assert_eq!(basis_admissible(&KernelSpaceSpec::stabilized(p3, 2)).unwrap().len(), 10);
        let bad = KernelSpaceSpec::truncation(p, 2, int(p.p as i64 - 1));
        assert!(matches!(basis_admissible(&bad), Err(Error::NontrivialityFailure(_))));
    }

    #[test]
    fn nontriviality_examples() {
        let p = domain_params(2, 2, 0).unwrap();
        let pp = p.p as i64;
        assert_eq!(nontriviality(&p, 3, &int(pp - 1)), Nontriviality::Trivial);
        assert_eq!(nontriviality(&p, 2, &int(pp + 10)), Nontriviality::ProperlyBigger);
        assert_eq!(nontriviality(&p, 4, &(int(pp + 1) + rat(1, 10))), Nontriviality::EqualToLower);
    }
}
