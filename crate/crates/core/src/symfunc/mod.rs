//! Signatures, symmetric polynomials, Jack and spherical polynomials,
//! Peter–Weyl kernels and domain structure constants.

pub mod jack;
pub mod params;
pub mod signature;
pub mod spherical;
pub mod sympoly;

pub use jack::{jack_p, jack_p_symbolic, jack_p_vars};
pub use params::{ball, domain_params, preset, CartanType, DomainParams};
pub use signature::{gen_signatures, Signature};
pub use spherical::{dim_d_m, kernel_k, kernel_k_by_extraction, pi_m, pochhammer_gen, pochhammer_rat, spherical_phi};
pub use sympoly::{binomial_product, sympoly_eval, sympoly_mul, sympoly_negate_vars, SymPoly};
