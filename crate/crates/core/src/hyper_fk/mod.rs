//! Terminating Faraut–Koranyi hypergeometric series, the conjectured kernel constants,
//! the conjecture comparator and rank-one closed forms.

mod conjecture;
mod constants;
mod rank1;
mod series;

pub use conjecture::{compare_shape, conjectured_kernel, conjecture_verify, kummer_check, prop_pp_identity, ShapeComparison};
pub use constants::{c_nu, c_q_nu, c_q_nu_form, conjecture_beta, ConjectureForm};
pub use rank1::{
    jacobi_at_one_minus_2t, rank1_closed_kernel, rank1_d1, rank1_spherical_sum, rank1_spherical_term, rank1_sum_identity,
    rank1_sum_side, Rank1Family, Rank1Kernel,
};
pub use series::{fk_2f1, fk_series, fk_series_at_e, remark_vn_coefficient, FkSeriesSpec, SeriesCap};
