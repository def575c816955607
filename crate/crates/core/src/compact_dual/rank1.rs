//! Complex projective space: classical Jacobi reductions of the compact-dual kernels.

use serde_json::json;

use super::family::jacobi_family;
use crate::error::{Error, Result};
use crate::exact_core::rational::{big, factorial, int, rising};
use crate::exact_core::{solve_rational, Rational};
use crate::hyper_fk::{compare_shape, jacobi_at_one_minus_2t};
use crate::symfunc::{ball, Signature, SymPoly};
use crate::verdict::{cell, Verdict};

fn sig1(k: u32) -> Signature {
    if k == 0 { Signature::empty() } else { Signature::new(&[k]).unwrap() }
}

fn fact(n: i64) -> Rational {
    big(factorial(n as u64))
}

/// Terminating Gauss ₂F₁(−n, β; γ; x) in one variable.
pub fn gauss_2f1(n: u32, beta: &Rational, gamma: &Rational) -> SymPoly<Rational> {
    let mut out = SymPoly::zero(1);
    for k in 0..=n {
        let c = rising(&int(-(n as i64)), k as u64) * rising(beta, k as u64)
            / (rising(gamma, k as u64) * fact(k as i64));
        out.add_term(sig1(k), c);
    }
    out
}

/// Γ(j+ν+1)/((d−1)!·j!²·(d+2j+ν)·Γ(d+j+ν)), the coefficient as printed.
pub fn rank1_coefficient_printed(d: u32, nu: u32, j: u32) -> Rational {
    let (d, nu, j) = (d as i64, nu as i64, j as i64);
    fact(j + nu) / (fact(d - 1) * fact(j) * fact(j) * int(d + 2 * j + nu) * fact(d + j + nu - 1))
}

/// (2j+d+ν)·Γ(j+d+ν)/((d−1)!·Γ(j+ν+1)), from the classical P(1) and norm formulas.
pub fn rank1_coefficient_derived(d: u32, nu: u32, j: u32) -> Rational {
    let (d, nu, j) = (d as i64, nu as i64, j as i64);
    int(2 * j + d + nu) * fact(j + d + nu - 1) / (fact(d - 1) * fact(j + nu))
}

/// Coefficients of P^{(d−1,ν)}_j(1−2t), j < m, in the orthogonal-expansion kernel on the ball's dual.
pub fn rank1_sq_coefficients(d: u32, nu: u32, m_order: u32) -> Result<Vec<Rational>> {
    if m_order == 0 {
        return Err(Error::InvalidParams("order m must be at least 1".into()));
    }
    let p = ball(d)?;
    let fam = jacobi_family(&p, nu, m_order - 1)?;
    (0..m_order)
        .map(|j| {
            let s = sig1(j);
            let jac = jacobi_at_one_minus_2t(d - 1, j).map(|c| c.eval(&int(nu as i64)).expect("polynomial in s"));
            // member is monic, so P = lead(P)·member
            let lead = jac.coeff(&s);
            Ok(&fam.values_at_one[&s] / (&fam.norms_on_01[&s] * lead))
        })
        .collect()
}

/// Checks the printed rank-one coefficient against the computed orthogonal expansion.
pub fn rank1_coefficient_check(d: u32, nu: u32, m_order: u32) -> Result<Verdict> {
    let computed = rank1_sq_coefficients(d, nu, m_order)?;
    let mut printed_bad = Vec::new();
    let mut derived_bad = Vec::new();
    for (j, c) in computed.iter().enumerate() {
        let j = j as u32;
        if *c != rank1_coefficient_printed(d, nu, j) {
            printed_bad.push(format!("j={j}: computed {c}, printed {}", rank1_coefficient_printed(d, nu, j)));
        }
        if *c != rank1_coefficient_derived(d, nu, j) {
            derived_bad.push(j.to_string());
        }
    }
    let cl = cell(&[("target", json!("rank1CompactCoefficient")), ("d", json!(d)), ("nu", json!(nu)), ("mOrder", json!(m_order))]);
    let mut v = Verdict::new(cl, printed_bad.is_empty());
    if !printed_bad.is_empty() {
        v = v.note(format!("printed coefficient differs: {}", printed_bad.join("; ")));
    }
    v = v.note(if derived_bad.is_empty() {
        "derived (2j+d+ν)Γ(j+d+ν)/((d−1)!Γ(j+ν+1)) matches".to_string()
    } else {
        format!("derived formula differs at j = {}", derived_bad.join(","))
    });
    Ok(v)
}

/// d_{ν,m} = (2m+ν+d)(m+ν+1)_{d−1}(m+1)_{d−1}/(d!(d−1)!).
pub fn d_nu_m(d: u32, nu: u32, m: u32) -> Rational {
    let (d, nu, m) = (d as i64, nu as i64, m as i64);
    int(2 * m + nu + d) * rising(&int(m + nu + 1), (d - 1) as u64) * rising(&int(m + 1), (d - 1) as u64)
        / (fact(d) * fact(d - 1))
}

/// A_n = (n+ν+1)_{d+1}(n+1)_{n+d−1}/((2n+d+ν+1)·d!²), as printed.
pub fn a_n_printed(d: u32, nu: u32, n: u32) -> Rational {
    let (d, nu, n) = (d as i64, nu as i64, n as i64);
    rising(&int(n + nu + 1), (d + 1) as u64) * rising(&int(n + 1), (n + d - 1) as u64)
        / (int(2 * n + d + nu + 1) * fact(d) * fact(d))
}

/// A_n from matching leading coefficients: d_{ν,n}(n+d+ν)_n(d+n)/((n+d+ν+2)_n·d).
pub fn a_n_leading(d: u32, nu: u32, n: u32) -> Rational {
    let (di, nui, ni) = (d as i64, nu as i64, n as i64);
    d_nu_m(d, nu, n) * rising(&int(ni + di + nui), n as u64) * int(di + ni)
        / (rising(&int(ni + di + nui + 2), n as u64) * int(di))
}

/// binom(n+d, d)·binom(n+d+ν, d), the value at 0 of the weighted sum.
pub fn a_n_derived(d: u32, nu: u32, n: u32) -> Rational {
    let (d, nu, n) = (d as i64, nu as i64, n as i64);
    rising(&int(n + 1), d as u64) * rising(&int(n + nu + 1), d as u64) / (fact(d) * fact(d))
}

/// Kernel at 0 of polynomials of degree ≤ n under (1−x)^ν x^{d−1}dx, and the degree-n orthogonal
/// polynomial for x·(1−x)^ν x^{d−1}dx normalised to 1 at 0.
fn lemma_y_pair(d: u32, nu: u32, n: u32) -> Result<(SymPoly<Rational>, SymPoly<Rational>)> {
    // ∫₀¹ x^k (1−x)^ν x^{d−1} dx = (k+d−1)! ν!/(k+d+ν)!
    let mom = |k: i64| fact(k + d as i64 - 1) * fact(nu as i64) / fact(k + d as i64 + nu as i64);
    let sz = n as usize + 1;
    let g: Vec<Vec<Rational>> = (0..sz).map(|i| (0..sz).map(|j| mom((i + j) as i64)).collect()).collect();
    let mut e0 = vec![int(0); sz];
    e0[0] = int(1);
    let c = solve_rational(&g, &e0)?;
    let kernel = SymPoly::from_terms(1, c.into_iter().enumerate().map(|(k, v)| (sig1(k as u32), v)));
    // orthogonality of x^n + Σ_{k<n} y_k x^k against x^i, i < n, under x·dμ
    let orth = if n == 0 {
        SymPoly::constant(1, int(1))
    } else {
        let nn = n as usize;
        let h: Vec<Vec<Rational>> = (0..nn).map(|i| (0..nn).map(|k| mom((i + k + 1) as i64)).collect()).collect();
        let rhs: Vec<Rational> = (0..nn).map(|i| -mom((i + nn + 1) as i64)).collect();
        let y = solve_rational(&h, &rhs)?;
        let mut q = SymPoly::from_terms(1, y.into_iter().enumerate().map(|(k, v)| (sig1(k as u32), v)));
        q.add_term(sig1(n), int(1));
        let q0 = q.coeff(&Signature::empty());
        q.scale(&(int(1) / q0))
    };
    Ok((kernel, orth))
}

/// Weighted-sum identity, kernel-at-origin proportionality to the orthogonal polynomial, positivity/integrality of d_{ν,m},
/// and the ratio between the dimension-weighted and orthogonal-expansion coefficients.
pub fn rank1_compact_suite(d: u32, nu: u32, n: u32) -> Result<Verdict> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be positive".into()));
    }
    let mut notes = Vec::new();
    let mut ok = true;

    let mut lhs = SymPoly::zero(1);
    let mut dims_ok = true;
    for m in 0..=n {
        let dm = d_nu_m(d, nu, m);
        dims_ok &= dm.is_integer() && dm > int(0);
        lhs = lhs.add(&gauss_2f1(m, &int((m + d + nu) as i64), &int(d as i64)).scale(&dm));
    }
    let f = gauss_2f1(n, &int((n + d + nu + 2) as i64), &int(d as i64 + 1));
    let printed = a_n_printed(d, nu, n);
    let sum_ok = lhs == f.scale(&printed);
    ok &= sum_ok && dims_ok;
    notes.push(format!("sum = A_n·₂F₁(−n, n+d+ν+2; d+1; x) with printed A_n: {sum_ok}"));
    // the orthogonal polynomial for x^d(1−x)^ν dx carries n+d+ν+1
    let f_adj = gauss_2f1(n, &int((n + d + nu + 1) as i64), &int(d as i64 + 1));
    let adj = compare_shape(&lhs, &f_adj);
    notes.push(match &adj.ratio {
        Some(k) => format!(
            "sum = {k}·₂F₁(−n, n+d+ν+1; d+1; x); printed A_n = {printed}; leading-coefficient A_n = {}; binom(n+d,d)·binom(n+d+ν,d) matches: {}",
            a_n_leading(d, nu, n),
            *k == a_n_derived(d, nu, n)
        ),
        None => "sum not proportional to ₂F₁(−n, n+d+ν+1; d+1; x)".into(),
    });
    notes.push(format!("d_(ν,m) positive integers: {dims_ok}"));
    if n == 0 {
        let binom = rising(&int(nu as i64 + 1), d as u64) / fact(d as i64);
        ok &= d_nu_m(d, nu, 0) == binom;
    }

    let (kernel, orth) = lemma_y_pair(d, nu, n)?;
    let ly = compare_shape(&kernel, &orth);
    let ly_ok = ly.ratio.as_ref().is_some_and(|k| *k > int(0));
    let orth_is_f = orth == f_adj;
    ok &= ly_ok && orth_is_f;
    notes.push(format!(
        "kernel at 0 ∝ orthogonal polynomial for x·dμ with positive constant: {ly_ok}; that polynomial is ₂F₁(−n, n+d+ν+1; d+1; x): {orth_is_f}"
    ));

    // dimension weights against orthogonal-expansion weights, per P^{(d−1,ν)}_m
    let sq = rank1_sq_coefficients(d, nu, n + 1)?;
    let ratios: Vec<Rational> = (0..=n)
        .map(|m| {
            let binom = rising(&int(m as i64 + 1), (d - 1) as u64) / fact(d as i64 - 1);
            &sq[m as usize] / (d_nu_m(d, nu, m) / binom)
        })
        .collect();
    let constant = ratios.windows(2).all(|w| w[0] == w[1]);
    notes.push(format!("expansion/dimension coefficient ratio {} across m: {}", if constant { "constant" } else { "varies" }, ratios[0]));
    ok &= constant;

    let c = cell(&[("target", json!("rank1Compact")), ("d", json!(d)), ("nu", json!(nu)), ("n", json!(n))]);
    let mut v = Verdict::new(c, ok);
    for s in notes {
        v = v.note(s);
    }
    Ok(v)
}
