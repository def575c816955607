use std::fmt;

use crate::error::{Error, Result};
use crate::exact_core::rational::{int, rat, Rational};

/// Rank and multiplicities of an irreducible bounded symmetric domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DomainParams {
    pub r: u32,
    pub a: u32,
    pub b: u32,
    /// genus
    pub p: u32,
    /// complex dimension
    pub d: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanType {
    /// I_{mn}, n ≥ m ≥ 1
    I { m: u32, n: u32 },
    II { n: u32 },
    III { m: u32 },
    IV { n: u32 },
    V,
    VI,
}

/// For r = 1 the middle multiplicity is conventionally 2.
pub fn domain_params(r: u32, a: u32, b: u32) -> Result<DomainParams> {
    if r == 0 {
        return Err(Error::InvalidParams("rank must be at least 1".into()));
    }
    let a = if r == 1 { 2 } else { a };
    if a == 0 {
        return Err(Error::InvalidParams("multiplicity a must be a positive integer".into()));
    }
    let p = (r - 1) * a + b + 2;
    let d = r * (r - 1) * a / 2 + r * b + r;
    Ok(DomainParams { r, a, b, p, d })
}

/// The unit ball of ℂ^d.
pub fn ball(d: u32) -> Result<DomainParams> {
    if d == 0 {
        return Err(Error::InvalidParams("dimension must be positive".into()));
    }
    domain_params(1, 2, d - 1)
}

pub fn preset(t: CartanType) -> Result<DomainParams> {
    match t {
        CartanType::I { m, n } if n >= m && m >= 1 => domain_params(m, 2, n - m),
        CartanType::II { n } if n >= 2 => domain_params(n, 1, 0),
        CartanType::III { m } if m >= 5 => {
            let r = m / 2;
            domain_params(r, 4, 2 * (m - 2 * r))
        }
        CartanType::IV { n } if n >= 5 => domain_params(2, n - 2, 0),
        CartanType::V => domain_params(2, 6, 4),
        CartanType::VI => domain_params(3, 8, 0),
        other => Err(Error::InvalidParams(format!("size parameters out of range for {other:?}"))),
    }
}

impl DomainParams {
    pub fn half_a(&self) -> Rational {
        rat(self.a as i64, 2)
    }

    /// (r−1)a/2 + 1
    pub fn q_omega(&self) -> Rational {
        rat(((self.r - 1) * self.a) as i64, 2) + int(1)
    }

    /// d/r
    pub fn d_over_r(&self) -> Rational {
        rat(self.d as i64, self.r as i64)
    }

    pub fn is_tube(&self) -> bool {
        self.b == 0
    }

    pub fn r_usize(&self) -> usize {
        self.r as usize
    }
}

impl fmt::Display for DomainParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} a={} b={} p={} d={}", self.r, self.a, self.b, self.p, self.d)
    }
}
