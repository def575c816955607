//! Exact scalars: big rationals, polynomials and rational functions in ν,
//! Γ-quotient reduction and exact linear solving.

pub mod gamma;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod scalar;

pub use gamma::{gamma_quotient_reduce, GammaArg, GammaQuotient};
pub use linalg::{linear_solve_exact, solve_bareiss, solve_rational, sum_of_products_is_zero};
pub use poly::{poly_normalize, PolyNu};
pub use ratfun::RatFun;
pub use scalar::Scalar;
pub use rational::{int, parse_rational, rat, rational_normalize, Rational};
