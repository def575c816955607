use crate::exact_core::rational::{big, binomial};
use crate::exact_core::Scalar;
use crate::symfunc::signature::distinct_permutations;
use crate::symfunc::{gen_signatures, SymPoly};

/// Rewrites f(y) under y_j = z_j/(1 + sign·z_j) as Π(1 + sign·z_j)^{−k}·g(z),
/// returning (−k, g) with k the largest exponent of a single variable in f.
fn rechart<S: Scalar>(f: &SymPoly<S>, sign: i64) -> (i64, SymPoly<S>) {
    let r = f.nvars();
    let k = f.iter().map(|(s, _)| s.first()).max().unwrap_or(0);
    let mut out = SymPoly::zero(r);
    let targets = gen_signatures(None, k, r);
    for (lam, c) in f.iter() {
        let perms = distinct_permutations(&lam.padded(r));
        for mu in &targets {
            let mp = mu.padded(r);
            let mut total = num_bigint::BigInt::from(0);
            for alpha in &perms {
                let mut t = num_bigint::BigInt::from(1);
                for j in 0..r {
                    if mp[j] < alpha[j] {
                        t = num_bigint::BigInt::from(0);
                        break;
                    }
                    let e = (mp[j] - alpha[j]) as u64;
                    t *= binomial((k - alpha[j]) as u64, e);
                    if sign < 0 && e % 2 == 1 {
                        t = -t;
                    }
                }
                total += t;
            }
            if total != num_bigint::BigInt::from(0) {
                out.add_term(mu.clone(), c.scaled(&big(total)));
            }
        }
    }
    (-(k as i64), out)
}

/// f(t/(1−t)) = Π(1−t_j)^{k}·g(t); returns (k, g) with k ≤ 0.
pub fn to_one_minus_t_chart<S: Scalar>(f: &SymPoly<S>) -> (i64, SymPoly<S>) {
    rechart(f, -1)
}

/// f(x/(1+x)) = Π(1+x_j)^{k}·g(x); returns (k, g) with k ≤ 0.
pub fn to_one_plus_x_chart<S: Scalar>(f: &SymPoly<S>) -> (i64, SymPoly<S>) {
    rechart(f, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::rational::{int, rat};
    use crate::exact_core::Rational;
    use crate::symfunc::Signature;

    #[test]
    fn pointwise_agreement() {
        let f = SymPoly::<Rational>::monomial(Signature::new(&[2, 1]).unwrap(), 2)
            .add(&SymPoly::constant(2, int(3)))
            .add(&SymPoly::monomial(Signature::new(&[1]).unwrap(), 2));
        let t = [rat(1, 3), rat(2, 7)];
        let x: Vec<Rational> = t.iter().map(|ti| ti / (int(1) - ti)).collect();
        let (k, g) = to_one_minus_t_chart(&f);
        assert_eq!(k, -2);
        let pref: Rational = t.iter().map(|ti| int(1) - ti).product();
        assert_eq!(f.eval(&x), g.eval(&t) / pref.pow(2));
        let (k, h) = to_one_plus_x_chart(&f);
        let pref: Rational = x.iter().map(|xi| int(1) + xi).product();
        assert_eq!(f.eval(&t), h.eval(&x) * pref.pow(k as i32));
    }
}
