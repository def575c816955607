//! Compact duals: multivariable Jacobi polynomials, the kernels Ŝ and N̂ at the origin,
//! the compact analogue of the conjectured ₂F₁ form, and rank-one reductions.

mod family;
mod kernels;
mod rank1;

pub use family::{bc_below, family_orthogonality_check, graded_lex, interval_scaling_check, jacobi_family, JacobiFamily};
pub use kernels::{
    c_hat_q_nu, gg_verify, nhat_origin, q_kernel, shat_kernel, shat_kernel_sq, shat_routes_check, CompactChartKernel,
    CompactKernel,
};
pub use rank1::{
    a_n_derived, a_n_leading, a_n_printed, d_nu_m, gauss_2f1, rank1_coefficient_check, rank1_coefficient_derived,
    rank1_coefficient_printed, rank1_compact_suite, rank1_sq_coefficients,
};
