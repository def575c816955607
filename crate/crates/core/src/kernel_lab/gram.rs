use rayon::prelude::*;

use super::basis::{basis_admissible, KernelSpaceSpec};
use crate::error::Result;
use crate::exact_core::RatFun;
use crate::selberg::{rho_omega, sympoly_moment_noncompact};
use crate::symfunc::{kernel_k, DomainParams, Signature, SymPoly};

/// Gram matrix of {K_m(xe,e)} under dρ, stored without the π^d factor of c_Ω.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub basis: Vec<Signature>,
    pub entries: Vec<Vec<RatFun>>,
    /// True matrix is π^{d·pi_grade} · entries.
    pub pi_grade: i32,
}

pub fn gram_matrix(spec: &KernelSpaceSpec) -> Result<GramMatrix> {
    let basis = basis_admissible(spec)?;
    gram_matrix_for(&spec.params, &basis)
}

/// Gram matrix for an explicit list of signatures.
pub fn gram_matrix_for(p: &DomainParams, basis: &[Signature]) -> Result<GramMatrix> {
    let ks: Vec<SymPoly<_>> = basis.iter().map(|m| kernel_k(m, p)).collect::<Result<_>>()?;
    let rho = rho_omega(p)?;
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let vals: Vec<RatFun> = pairs
        .par_iter()
        .map(|&(i, j)| Ok(sympoly_moment_noncompact(&ks[i].mul(&ks[j]), p)?.scale(&rho)))
        .collect::<Result<_>>()?;
    let mut entries = vec![vec![RatFun::zero(); n]; n];
    for (&(i, j), v) in pairs.iter().zip(vals) {
        entries[j][i] = v.clone();
        entries[i][j] = v;
    }
    Ok(GramMatrix { basis: basis.to_vec(), entries, pi_grade: 1 })
}
