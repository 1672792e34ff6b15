//! Choi–Jamiołkowski bridge and SPA mixing parameters.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::maps::{check_alpha, extend_one_sided, QutritMapSpec, QUTRIT};
use crate::matrix::{min_eigenvalue, ComplexMatrix};
use crate::states::max_entangled;

/// Eigenvalues at or above this count as non-negative.
pub const PSD_THRESHOLD: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiMatrix {
    #[serde(flatten)]
    pub matrix: ComplexMatrix,
    pub source: QutritMapSpec,
}

/// (𝕀 ⊗ Λ)(|Φ⁺⟩⟨Φ⁺|) for the two-qutrit maximally entangled |Φ⁺⟩.
pub fn choi_of(map: &QutritMapSpec) -> Result<ChoiMatrix> {
    let phi = max_entangled(QUTRIT)?;
    Ok(ChoiMatrix {
        matrix: extend_one_sided(map, phi.matrix())?,
        source: *map,
    })
}

/// Closed-form least eigenvalue of the Choi matrix of Λ_α,
/// (1 − √(1+4α²)) / (6 + 6α²).
pub fn least_choi_eigenvalue(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let a2 = alpha * alpha;
    Ok((1.0 - (1.0 + 4.0 * a2).sqrt()) / (6.0 + 6.0 * a2))
}

/// Mixing data for the optimal structural physical approximation of Λ_α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaParameters {
    pub alpha: f64,
    /// max(0, −λ′), the depth of the Choi matrix below zero.
    pub lambda: f64,
    pub p_star: f64,
    pub d: usize,
    pub d_prime: usize,
    /// Trace rescaling of the map; 1 because Λ_α is trace preserving.
    pub beta: f64,
}

impl SpaParameters {
    /// p* = λdd′β⁻¹ / (λdd′β⁻¹ + 1).
    pub fn mixing_weight(lambda: f64, d: usize, d_prime: usize, beta: f64) -> f64 {
        let scaled = lambda * (d * d_prime) as f64 / beta;
        scaled / (scaled + 1.0)
    }
}

pub fn spa_parameters(alpha: f64) -> Result<SpaParameters> {
    let lambda = (-least_choi_eigenvalue(alpha)?).max(0.0);
    let (d, d_prime, beta) = (QUTRIT, QUTRIT, 1.0);
    Ok(SpaParameters {
        alpha,
        lambda,
        p_star: SpaParameters::mixing_weight(lambda, d, d_prime, beta),
        d,
        d_prime,
        beta,
    })
}

/// Choi's criterion: returns whether the map is CP together with the
/// least eigenvalue of its Choi matrix.
pub fn is_completely_positive(map: &QutritMapSpec) -> Result<(bool, f64)> {
    let min = min_eigenvalue(&choi_of(map)?.matrix)?;
    Ok((min >= PSD_THRESHOLD, min))
}
