//! Moments of monomial symmetric polynomials against the radial weights.

pub(crate) mod linsum;
pub mod mass;
pub mod moments;
pub mod numeric;

pub use mass::{rho_omega, selberg_total_mass};
pub use moments::{
    compact_chamber, moment_compact, moment_noncompact, moment_noncompact_chamber, moment_noncompact_even,
    sympoly_moment_compact, sympoly_moment_noncompact, sympoly_moment_noncompact_nu, DEFAULT_TERM_BUDGET,
};
pub use numeric::{gauss_legendre, moment_numeric, DEFAULT_NODES};

/// Which radial weight a moment is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// x^b (1+x)^{−ν} |Δ(x)|^a on ℝ₊^r
    NoncompactRho,
    /// t^b (1−t)^{ν−p} |Δ(t)|^a on [0,1]^r
    CompactMu,
    /// t^b (1−t)^ν |Δ(t)|^a on [0,1]^r
    CompactHat,
}
