use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::WeightKind;
use crate::error::{Error, Result};
use crate::symfunc::signature::{distinct_permutations, Signature};
use crate::symfunc::DomainParams;

/// Default Gauss–Legendre nodes per dimension.
pub const DEFAULT_NODES: usize = 64;

/// Power used to smooth endpoint singularities: y = w^K on each chamber coordinate.
const SMOOTHING: f64 = 4.0;

type Rule = Arc<(Vec<f64>, Vec<f64>)>;

fn rule_cache() -> &'static RwLock<HashMap<usize, Rule>> {
    static C: OnceLock<RwLock<HashMap<usize, Rule>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Gauss–Legendre nodes and weights mapped to [0,1].
pub fn gauss_legendre(n: usize) -> Rule {
    if let Some(r) = rule_cache().read().unwrap().get(&n) {
        return r.clone();
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    let r = Arc::new((x, w));
    rule_cache().write().unwrap().insert(n, r.clone());
    r
}

/// Floating-point oracle for the moments, by tensor Gauss–Legendre on the
/// ordered chamber s₁ > … > s_r written as s₁ = v, s_k = v·u₂⋯u_k.
pub fn moment_numeric(lam: &Signature, p: &DomainParams, nu: f64, kind: WeightKind, nodes: usize) -> Result<f64> {
    let r = p.r_usize();
    if lam.len() > r {
        return Err(Error::InvalidParams(format!("signature {lam} has more than r parts")));
    }
    let a = p.a as f64;
    let lp = lam.padded(r);
    // s-space exponents: Π s^{P_i} (1−s)^{Q_i}
    let mut total = 0.0;
    for perm in distinct_permutations(&lp) {
        let alpha: Vec<f64> = perm.iter().map(|&x| (x + p.b) as f64).collect();
        let (pw, qw): (Vec<f64>, Vec<f64>) = match kind {
            WeightKind::NoncompactRho => {
                if lam.first() as f64 >= nu - p.p as f64 + 1.0 {
                    return Err(Error::Divergent(format!(
                        "∫ m_{lam} dρ needs λ₁ < ν − p + 1 (ν = {nu}, p = {})",
                        p.p
                    )));
                }
                (alpha.iter().map(|ai| nu - ai - 2.0 - (r as f64 - 1.0) * a).collect(), alpha.clone())
            }
            WeightKind::CompactMu | WeightKind::CompactHat => {
                let e = if kind == WeightKind::CompactMu { nu - p.p as f64 } else { nu };
                if e <= -1.0 {
                    return Err(Error::Divergent(format!("(1−t)^{e} is not integrable")));
                }
                (alpha.clone(), vec![e; r])
            }
        };
        total += chamber_quadrature(&pw, &qw, a, nodes);
    }
    let rf: f64 = (1..=r).map(|k| k as f64).product();
    Ok(total * rf)
}

fn chamber_quadrature(pw: &[f64], qw: &[f64], a: f64, nodes: usize) -> f64 {
    let r = pw.len();
    // exponents of v and u_k collected from the pure powers, |Δ|^a and the Jacobian
    let mut ex = vec![0.0; r];
    for k in 0..r {
        for i in k..r {
            ex[k] += pw[i] + a * (r - 1 - i) as f64;
        }
        ex[k] += (r - 1 - k) as f64;
    }
    let rule = gauss_legendre(nodes);
    let (xs, ws) = (&rule.0, &rule.1);
    let n = xs.len();
    let mut idx = vec![0usize; r];
    let mut y = vec![0.0; r];
    let mut acc = 0.0;
    loop {
        let mut weight = 1.0;
        for k in 0..r {
            let w = xs[idx[k]];
            y[k] = w.powf(SMOOTHING);
            // y^{E} dy = K w^{K(E+1)−1} dw
            weight *= ws[idx[k]] * SMOOTHING * w.powf(SMOOTHING * (ex[k] + 1.0) - 1.0);
        }
        let mut f = weight;
        let mut s = 1.0;
        for i in 0..r {
            s *= y[i];
            f *= (1.0 - s).powf(qw[i]);
        }
        for i in 0..r {
            for j in i + 1..r {
                let prod: f64 = y[i + 1..=j].iter().product();
                f *= (1.0 - prod).powf(a);
            }
        }
        acc += f;
        let mut k = 0;
        loop {
            if k == r {
                return acc;
            }
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::{rat, to_f64};
    use crate::selberg::moment_noncompact;
    use crate::symfunc::domain_params;

    #[test]
    fn gauss_rule_integrates_polynomials() {
        let r = gauss_legendre(8);
        let s: f64 = r.0.iter().zip(&r.1).map(|(x, w)| w * x.powi(7)).sum();
        assert!((s - 0.125).abs() < 1e-14);
    }

    #[test]
    fn matches_exact_rank_two() {
        let p = domain_params(2, 1, 0).unwrap();
        let exact = moment_noncompact(&Signature::empty(), &p).unwrap();
        let e = to_f64(&exact.eval(&rat(23, 2)).unwrap());
        let n = moment_numeric(&Signature::empty(), &p, 11.5, WeightKind::NoncompactRho, DEFAULT_NODES).unwrap();
        assert!(((n - e) / e).abs() < 1e-8, "{n} vs {e}");
    }

    #[test]
    fn rank_one_beta() {
        // Γ(3)Γ(4.25)/Γ(7.25)
        let p = domain_params(1, 2, 0).unwrap();
        let sig = Signature::new(&[2]).unwrap();
        let n = moment_numeric(&sig, &p, 7.25, WeightKind::NoncompactRho, DEFAULT_NODES).unwrap();
        let expect = 2.0 / (6.25 * 5.25 * 4.25);
        assert!(((n - expect) / expect).abs() < 1e-10);
    }

    #[test]
    fn divergence_rejected() {
        let p = domain_params(2, 2, 0).unwrap();
        let sig = Signature::new(&[3]).unwrap();
        assert!(moment_numeric(&sig, &p, 6.0, WeightKind::NoncompactRho, 16).is_err());
    }
}
