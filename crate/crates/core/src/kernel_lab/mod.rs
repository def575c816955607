//! Grammian reproducing kernels at the origin for spaces spanned by Peter–Weyl kernels.

mod basis;
mod checks;
mod chart;
mod gram;
mod repker;

pub use basis::{basis_admissible, nontriviality, BasisRule, KernelSpaceSpec, Nontriviality, ScalarKind};
pub use checks::{reproducing_property_check, stabilization_check};
pub use chart::{to_one_minus_t_chart, to_one_plus_x_chart};
pub use gram::{gram_matrix, gram_matrix_for, GramMatrix};
pub use repker::{grammian_kernel, repker_n_origin, repker_p_origin, repker_s, ChartKernel, KernelAtOrigin};
