use std::fmt;

use num_traits::{One, Zero};
use serde_json::Value;

use super::ratfun::RatFun;
use super::rational::Rational;

/// Exact field scalar used by the generic symmetric-function layer.
pub trait Scalar: Clone + PartialEq + Zero + One + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn recip(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    fn to_json(&self) -> Value;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }
}

impl Scalar for Rational {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) { None } else { Some(<Rational as One>::one() / self) }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl Scalar for RatFun {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        RatFun::from_rational(r.clone())
    }
    fn to_json(&self) -> Value {
        RatFun::to_json(self)
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}
