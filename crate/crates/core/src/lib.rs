//! Exact reproducing kernels of symmetric-polynomial spaces on bounded
//! symmetric domains and their compact duals.

pub mod compact_dual;
pub mod error;
pub mod exact_core;
pub mod hyper_fk;
pub mod kernel_lab;
pub mod report;
pub mod selberg;
pub mod symfunc;
pub mod verdict;

pub use error::{Error, Result};
pub use exact_core::{PolyNu, RatFun, Rational};
pub use verdict::{Status, Verdict};
