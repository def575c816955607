use num_traits::{One, Zero};

use super::poly::PolyNu;
use super::ratfun::RatFun;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Gaussian elimination over ℚ.
pub fn solve_rational(m: &[Vec<Rational>], v: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(v)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(k, p);
        let inv = Rational::one() / &a[k][k];
        for j in k..=n {
            a[k][j] = &a[k][j] * &inv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..=n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Solves M·x = v over ℚ(ν) exactly.
///
/// Solutions are reconstructed from exact solves at sample points of ν and
/// then certified against the system as rational-function identities; if the
/// reconstruction does not settle, fraction-free elimination is used instead.
pub fn linear_solve_exact(m: &[Vec<RatFun>], v: &[RatFun]) -> Result<Vec<RatFun>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) || v.len() != n {
        return Err(Error::InvalidParams("matrix must be square and match the right-hand side".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if let Some(x) = solve_by_interpolation(m, v, 1024) {
        if residual_is_zero(m, &x, v) {
            return Ok(x);
        }
    }
    let x = solve_bareiss(m, v)?;
    debug_assert!(residual_is_zero(m, &x, v));
    Ok(x)
}

/// Fraction-free (Bareiss) elimination on the denominator-cleared system,
/// pivoting on the lowest-degree entry, followed by back substitution in ℚ(ν).
pub fn solve_bareiss(m: &[Vec<RatFun>], v: &[RatFun]) -> Result<Vec<RatFun>> {
    let n = m.len();
    let mut a: Vec<Vec<PolyNu>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut l = PolyNu::one();
        for f in m[i].iter().chain(std::iter::once(&v[i])) {
            let d = f.denom();
            let g = l.gcd(d);
            l = l.mul(&d.exact_div(&g));
        }
        let row: Vec<PolyNu> = m[i]
            .iter()
            .chain(std::iter::once(&v[i]))
            .map(|f| f.numer().mul(&l.exact_div(f.denom())))
            .collect();
        a.push(row);
    }
    let mut prev = PolyNu::one();
    for k in 0..n {
        let p = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].deg0(), i))
            .ok_or(Error::SingularMatrix)?;
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.exact_div(&prev);
            }
            a[i][k] = PolyNu::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![RatFun::zero(); n];
    for i in (0..n).rev() {
        let mut acc = RatFun::from_poly(a[i][n].clone());
        for j in i + 1..n {
            acc = &acc - &(&RatFun::from_poly(a[i][j].clone()) * &x[j]);
        }
        x[i] = acc.checked_div(&RatFun::from_poly(a[i][i].clone()))?;
    }
    Ok(x)
}

const CHECKS: usize = 4;

/// Exact solves at ν = 211, 212, … and rational reconstruction per component.
pub fn solve_by_interpolation(m: &[Vec<RatFun>], v: &[RatFun], max_points: usize) -> Option<Vec<RatFun>> {
    let n = m.len();
    let mut xs: Vec<Rational> = Vec::new();
    let mut ys: Vec<Vec<Rational>> = Vec::new();
    let mut next = 211i64;
    let mut target = 8usize;
    let mut singular_streak = 0;
    loop {
        while xs.len() < target + CHECKS {
            let x = int(next);
            next += 1;
            match sample(m, v, &x) {
                Some(y) => {
                    xs.push(x);
                    ys.push(y);
                    singular_streak = 0;
                }
                None => {
                    singular_streak += 1;
                    if singular_streak > 64 {
                        return None;
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(n);
        let mut ok = true;
        for c in 0..n {
            let pts: Vec<(Rational, Rational)> =
                xs.iter().zip(&ys).map(|(x, y)| (x.clone(), y[c].clone())).collect();
            let fits = |f: &RatFun| pts[target..].iter().all(|(x, y)| f.eval(x).as_ref() == Some(y));
            // polynomial first: cheap, and the common case for kernel coefficients
            let poly = RatFun::from_poly(newton(&pts[..target]));
            let fit = if fits(&poly) { Some(poly) } else { rational_interpolate(&pts[..target]) };
            match fit {
                Some(f) if fits(&f) => out.push(f),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(out);
        }
        if target >= max_points {
            return None;
        }
        target *= 2;
    }
}

fn sample(m: &[Vec<RatFun>], v: &[RatFun], x: &Rational) -> Option<Vec<Rational>> {
    let mut mm = Vec::with_capacity(m.len());
    for row in m {
        let mut r = Vec::with_capacity(row.len());
        for f in row {
            r.push(f.eval(x)?);
        }
        mm.push(r);
    }
    let mut vv = Vec::with_capacity(v.len());
    for f in v {
        vv.push(f.eval(x)?);
    }
    solve_rational(&mm, &vv).ok()
}

fn newton(pts: &[(Rational, Rational)]) -> PolyNu {
    let n = pts.len();
    // divided differences
    let xs: Vec<Rational> = pts.iter().map(|p| p.0.clone()).collect();
    let mut dd: Vec<Rational> = pts.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = num / den;
        }
    }
    let mut p = PolyNu::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = PolyNu::linear(&Rational::one(), &(-xs[i].clone()));
        p = p.mul(&lin).add(&PolyNu::constant(dd[i].clone()));
    }
    p
}

/// Newton interpolation followed by maximal-quotient rational reconstruction.
pub fn rational_interpolate(pts: &[(Rational, Rational)]) -> Option<RatFun> {
    if pts.is_empty() {
        return None;
    }
    let xs: Vec<Rational> = pts.iter().map(|p| p.0.clone()).collect();
    let p = newton(pts);
    let modulus = PolyNu::from_roots(&xs);
    // Euclid on (modulus, p), tracking cofactor t with r ≡ t·p
    let (mut r0, mut r1) = (modulus, p);
    let (mut t0, mut t1) = (PolyNu::zero(), PolyNu::one());
    let mut best: Option<(usize, PolyNu, PolyNu)> = None;
    while !r1.is_zero() {
        let (q, r2) = r0.div_rem(&r1);
        let qd = q.deg0();
        if best.as_ref().is_none_or(|b| qd > b.0) {
            best = Some((qd, r1.clone(), t1.clone()));
        }
        let t2 = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    match best {
        Some((_, r, t)) if !t.is_zero() => RatFun::new(r, t).ok(),
        None => Some(RatFun::zero()),
        _ => None,
    }
}

/// Decides exactly whether Σ_k coef_k · Π_f f vanishes in ℚ(ν).
///
/// The numerator of the combined fraction has degree at most the bound
/// computed below, so vanishing at that many plus one non-polar integer
/// points proves the identity.
pub fn sum_of_products_is_zero(terms: &[(Rational, Vec<&RatFun>)]) -> bool {
    // common denominator: lcm over terms of each term's product of denominators
    let mut common = PolyNu::one();
    let mut term_dens = Vec::with_capacity(terms.len());
    for (_, fs) in terms {
        let mut d = PolyNu::one();
        for f in fs {
            if f.denom().deg0() > 0 {
                d = d.mul(f.denom());
            }
        }
        if d.deg0() > 0 {
            let g = common.gcd(&d);
            common = common.mul(&d.exact_div(&g));
        }
        term_dens.push(d.deg0());
    }
    let den_total = common.deg0();
    let mut bound = 0usize;
    for ((_, fs), dd) in terms.iter().zip(&term_dens) {
        let dn: usize = fs.iter().map(|f| f.numer().deg0()).sum();
        bound = bound.max(dn + den_total - dd);
    }
    let mut good = 0usize;
    let mut x = 0i64;
    while good <= bound {
        x += 1;
        let xr = int(x);
        let mut acc = Rational::zero();
        let mut polar = false;
        for (c, fs) in terms {
            let mut t = c.clone();
            for f in fs {
                match f.eval(&xr) {
                    Some(v) => t *= v,
                    None => {
                        polar = true;
                        break;
                    }
                }
            }
            if polar {
                break;
            }
            acc += t;
        }
        if polar {
            continue;
        }
        if !acc.is_zero() {
            return false;
        }
        good += 1;
    }
    true
}

/// M·x − v ≡ 0 exactly.
pub fn residual_is_zero(m: &[Vec<RatFun>], x: &[RatFun], v: &[RatFun]) -> bool {
    m.iter().zip(v).all(|(row, vi)| {
        let mut terms: Vec<(Rational, Vec<&RatFun>)> =
            row.iter().zip(x).map(|(a, b)| (Rational::one(), vec![a, b])).collect();
        terms.push((-Rational::one(), vec![vi]));
        sum_of_products_is_zero(&terms)
    })
}

/// Symbolic residual M·x − v computed with field operations.
pub fn residual(m: &[Vec<RatFun>], x: &[RatFun], v: &[RatFun]) -> Vec<RatFun> {
    m.iter()
        .zip(v)
        .map(|(row, vi)| {
            let mut acc = -vi;
            for (a, b) in row.iter().zip(x) {
                acc = &acc + &(a * b);
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::rat;

    fn nu() -> RatFun {
        RatFun::nu()
    }

    #[test]
    fn identity_system() {
        let one = RatFun::one();
        let z = RatFun::zero();
        let m = vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]];
        let v = vec![nu(), RatFun::from_int(3)];
        assert_eq!(linear_solve_exact(&m, &v).unwrap(), v);
    }

    #[test]
    fn cramer_two_by_two() {
        let one = RatFun::one();
        let m = vec![vec![nu(), one.clone()], vec![one.clone(), nu()]];
        let v = vec![one.clone(), RatFun::zero()];
        let x = linear_solve_exact(&m, &v).unwrap();
        let d = &(&nu() * &nu()) - &one;
        assert_eq!(x[0], &nu() / &d);
        assert_eq!(x[1], &(-&one) / &d);
        assert_eq!(solve_bareiss(&m, &v).unwrap(), x);
        assert!(residual(&m, &x, &v).iter().all(|r| r.is_zero()));
    }

    #[test]
    fn singular_detected() {
        let one = RatFun::one();
        let m = vec![vec![nu(), nu()], vec![one.clone(), one.clone()]];
        let v = vec![one.clone(), one.clone()];
        assert_eq!(linear_solve_exact(&m, &v), Err(Error::SingularMatrix));
    }

    #[test]
    fn interpolation_recovers_rational_function() {
        let f = RatFun::new(
            PolyNu::from_coeffs(vec![rat(1, 3), int(-2), int(0), int(5)]),
            PolyNu::from_roots(&[rat(1, 2), int(7), int(-3)]),
        )
        .unwrap();
        let pts: Vec<(Rational, Rational)> =
            (0..9).map(|k| int(20 + k)).map(|x| (x.clone(), f.eval(&x).unwrap())).collect();
        assert_eq!(rational_interpolate(&pts), Some(f));
    }

    #[test]
    fn sum_of_products_decides() {
        let a = &nu() + &RatFun::one();
        let b = RatFun::affine(&int(1), &int(-2)).inv().unwrap();
        let ab = &a * &b;
        assert!(sum_of_products_is_zero(&[(int(1), vec![&a, &b]), (int(-1), vec![&ab])]));
        assert!(!sum_of_products_is_zero(&[(int(1), vec![&a, &b]), (int(-2), vec![&ab])]));
    }
}
