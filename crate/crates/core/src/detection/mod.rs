//! Entanglement detection: partial transposition, positive maps, the τ_x
//! minor, witnesses, and the covariance matrix criterion.

mod cmc;
mod gellmann;
mod report;
mod witness;

pub use cmc::{cmc_check, CmcReport};
pub use gellmann::{decompose_in_gellmann, gellmann_basis, GellMannBasis, GellMannCoefficients};
pub use report::{full_report, report_maps, DetectionReport, MapVerdict, WitnessReading};
pub use witness::{
    product_expectation, unit_vector_from_angles, weak_optimality_check, witness_value,
    WeakOptimality, WitnessOperator,
};

use crate::error::{Error, Result};
use crate::maps::{check_alpha, extend_one_sided, QutritMapSpec};
use crate::matrix::{
    hermitian_eigenvalues, partial_transpose, principal_minor, Spectrum, Subsystem,
};
use crate::states::{tau_x, DensityMatrix};

/// An eigenvalue below this is reported as negative.
pub const NEGATIVE_EIGENVALUE_THRESHOLD: f64 = -1e-10;

/// Rows/columns of 𝕀⊗Λ_α(τ_x) holding the |00⟩, |11⟩, |22⟩ block.
pub const TAU_MINOR_INDICES: [usize; 3] = [0, 4, 8];

/// Spectrum of ρ^{T_B}.
pub fn ppt_spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    hermitian_eigenvalues(&partial_transpose(rho.matrix(), rho.dims(), Subsystem::B)?)
}

/// Whether (𝕀 ⊗ Λ)(ρ) has a negative eigenvalue, with that eigenvalue.
pub fn map_detects(map: &QutritMapSpec, rho: &DensityMatrix) -> Result<(bool, f64)> {
    let min = hermitian_eigenvalues(&extend_one_sided(map, rho.matrix())?)?.min();
    Ok((min < NEGATIVE_EIGENVALUE_THRESHOLD, min))
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: "x",
            value: x,
            domain: "(0, inf)",
        })
    }
}

/// x(2+x)(α + x/α) − α(1+x): the determinant of the unnormalised
/// {|00⟩,|11⟩,|22⟩} block of 𝕀⊗Λ_α(τ_x). Increasing in x on (0, ∞).
fn minor_core(alpha: f64, x: f64) -> f64 {
    x * (2.0 + x) * (alpha + x / alpha) - alpha * (1.0 + x)
}

/// Closed form of the {0,4,8} principal minor of 𝕀⊗Λ_α(τ_x), carrying a
/// single factor of the map and state normalisations. Same sign as the
/// exact minor, which carries each factor cubed.
pub fn minor_d_tau(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_x(x)?;
    let n = 1.0 / (alpha + 1.0 / alpha);
    Ok(n * minor_core(alpha, x) / (3.0 * (1.0 + x + 1.0 / x)))
}

/// The {0,4,8} principal minor of 𝕀⊗Λ_α(τ_x), computed from the matrix.
pub fn minor_d_tau_numeric(alpha: f64, x: f64) -> Result<f64> {
    let map = QutritMapSpec::lambda_alpha(alpha)?;
    let image = extend_one_sided(&map, tau_x(x)?.matrix())?;
    principal_minor(&image, &TAU_MINOR_INDICES)
}

/// Root of the τ_x minor in x for fixed α, by bisection.
///
/// The bracket `[lo, hi]` is checked for a sign change before refining;
/// the minor is monotone in x so the root is unique.
pub fn minor_root(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let f = |x: f64| minor_core(alpha, x);
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::Malformed(format!(
                "no sign change of the minor for alpha = {alpha}"
            )));
        }
    }
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
