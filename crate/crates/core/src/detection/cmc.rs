use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gellmann::gellmann_basis;
use crate::error::Result;
use crate::matrix::{hs_inner, kron, trace_norm, ComplexMatrix};
use crate::states::{reduced_pair, DensityMatrix};

const VIOLATION_MARGIN: f64 = 1e-12;

/// Covariance matrix criterion evidence: ‖C‖₁ against
/// √((1 − Tr ρ_A²)(1 − Tr ρ_B²)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CmcReport {
    pub c_matrix: Vec<Vec<f64>>,
    pub lhs: f64,
    pub rhs: f64,
    pub violated: bool,
}

impl CmcReport {
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// Builds C_ij = ⟨H_i⊗H_j⟩ − ⟨H_i⟩⟨H_j⟩ over the Hilbert-Schmidt
/// orthonormalised identity + Gell-Mann observables and compares its trace
/// norm with the marginal purities. A violation certifies entanglement.
pub fn cmc_check(rho: &DensityMatrix) -> Result<CmcReport> {
    rho.matrix().ensure_dim(9)?;
    let (rho_a, rho_b) = reduced_pair(rho)?;
    let observables = gellmann_basis().orthonormal();
    let mean = |state: &ComplexMatrix, h: &ComplexMatrix| -> Result<f64> {
        // Tr[h ρ] with h Hermitian.
        Ok(hs_inner(h, state)?.re)
    };
    let local_a: Vec<f64> = observables
        .iter()
        .map(|h| mean(rho_a.matrix(), h))
        .collect::<Result<_>>()?;
    let local_b: Vec<f64> = observables
        .iter()
        .map(|h| mean(rho_b.matrix(), h))
        .collect::<Result<_>>()?;

    let mut c_matrix = vec![vec![0.0; 9]; 9];
    for (i, hi) in observables.iter().enumerate() {
        for (j, hj) in observables.iter().enumerate() {
            let joint = mean(rho.matrix(), &kron(hi, hj))?;
            c_matrix[i][j] = joint - local_a[i] * local_b[j];
        }
    }
    let as_complex = ComplexMatrix::from_fn(9, |i, j| Complex64::new(c_matrix[i][j], 0.0));
    let lhs = trace_norm(&as_complex);
    let rhs = ((1.0 - rho_a.purity()).max(0.0) * (1.0 - rho_b.purity()).max(0.0)).sqrt();
    Ok(CmcReport {
        c_matrix,
        lhs,
        rhs,
        violated: lhs > rhs + VIOLATION_MARGIN,
    })
}
