//! Concrete two-qutrit states: |Φ⁺⟩, the τ_x family and the SPA Choi family.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::check_alpha;
use crate::matrix::{min_eigenvalue, partial_trace, ComplexMatrix, Subsystem};

pub const DENSITY_TRACE_TOL: f64 = 1e-12;
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
pub const DENSITY_PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateFamily {
    TauX,
    SpaChoi,
    MaxEntangled,
}

impl StateFamily {
    pub fn name(self) -> &'static str {
        match self {
            StateFamily::TauX => "tau-x",
            StateFamily::SpaChoi => "spa-choi",
            StateFamily::MaxEntangled => "max-entangled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateFamilyPoint {
    pub family: StateFamily,
    pub parameter: f64,
}

impl StateFamilyPoint {
    pub fn new(family: StateFamily, parameter: f64) -> Result<Self> {
        match family {
            StateFamily::TauX => check_x(parameter)?,
            StateFamily::SpaChoi => check_alpha(parameter)?,
            StateFamily::MaxEntangled => {
                if parameter.fract() != 0.0 || parameter < 2.0 {
                    return Err(Error::ParameterOutOfRange {
                        name: "d",
                        value: parameter,
                        domain: "integers >= 2",
                    });
                }
            }
        }
        Ok(Self { family, parameter })
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        match self.family {
            StateFamily::TauX => tau_x(self.parameter),
            StateFamily::SpaChoi => spa_choi_state(self.parameter),
            StateFamily::MaxEntangled => max_entangled(self.parameter as usize),
        }
    }
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

/// Hermitian, positive semidefinite, unit-trace matrix on C^dA ⊗ C^dB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateFile", into = "StateFile")]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: (usize, usize),
    provenance: Option<StateFamilyPoint>,
}

/// On-disk form of a state: the matrix JSON plus optional provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(flatten)]
    pub matrix: ComplexMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<StateFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<f64>,
}

impl TryFrom<StateFile> for DensityMatrix {
    type Error = Error;

    fn try_from(file: StateFile) -> Result<Self> {
        let dim = file.matrix.dim();
        let dims = if dim == 9 { (3, 3) } else { (dim, 1) };
        let provenance = match (file.family, file.parameter) {
            (Some(family), Some(parameter)) => Some(StateFamilyPoint { family, parameter }),
            (None, None) => None,
            (Some(_), None) => {
                return Err(Error::Malformed(
                    "field `parameter` missing for `family`".into(),
                ))
            }
            (None, Some(_)) => {
                return Err(Error::Malformed(
                    "field `family` missing for `parameter`".into(),
                ))
            }
        };
        let mut rho = DensityMatrix::new(file.matrix, dims)?;
        rho.provenance = provenance;
        Ok(rho)
    }
}

impl From<DensityMatrix> for StateFile {
    fn from(rho: DensityMatrix) -> Self {
        StateFile {
            matrix: rho.matrix,
            family: rho.provenance.map(|p| p.family),
            parameter: rho.provenance.map(|p| p.parameter),
        }
    }
}

impl DensityMatrix {
    /// Validates all three density-matrix invariants and reports the first
    /// violation with its margin.
    pub fn new(matrix: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        if dims.0 * dims.1 != matrix.dim() {
            return Err(Error::DimensionMismatch {
                expected: dims.0 * dims.1,
                found: matrix.dim(),
            });
        }
        let herm = matrix.hermiticity_deviation();
        if herm > DENSITY_HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix {
                invariant: "hermitian",
                margin: herm,
            });
        }
        let tr = matrix.trace();
        let trace_gap = (tr - Complex64::new(1.0, 0.0)).norm();
        if trace_gap > DENSITY_TRACE_TOL {
            return Err(Error::InvalidDensityMatrix {
                invariant: "unit trace",
                margin: trace_gap,
            });
        }
        let min = min_eigenvalue(&matrix)?;
        if min < -DENSITY_PSD_TOL {
            return Err(Error::InvalidDensityMatrix {
                invariant: "positive semidefinite",
                margin: -min,
            });
        }
        Ok(Self {
            matrix,
            dims,
            provenance: None,
        })
    }

    pub fn two_qutrit(matrix: ComplexMatrix) -> Result<Self> {
        Self::new(matrix, (3, 3))
    }

    pub fn with_provenance(mut self, point: StateFamilyPoint) -> Self {
        self.provenance = Some(point);
        self
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn provenance(&self) -> Option<StateFamilyPoint> {
        self.provenance
    }

    /// Tr(ρ²)
    pub fn purity(&self) -> f64 {
        crate::matrix::hs_inner(&self.matrix, &self.matrix)
            .expect("same matrix")
            .re
    }
}

/// |Φ⁺⟩⟨Φ⁺| with |Φ⁺⟩ = Σ|ii⟩/√d.
pub fn max_entangled(d: usize) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "d",
            value: d as f64,
            domain: "integers >= 2",
        });
    }
    let amp = 1.0 / d as f64;
    let m = ComplexMatrix::from_fn(d * d, |i, j| {
        if i % (d + 1) == 0 && j % (d + 1) == 0 {
            Complex64::new(amp, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(
        DensityMatrix::new(m, (d, d))?.with_provenance(StateFamilyPoint {
            family: StateFamily::MaxEntangled,
            parameter: d as f64,
        }),
    )
}

/// The PPT family τ_x, x > 0.
pub fn tau_x(x: f64) -> Result<DensityMatrix> {
    check_x(x)?;
    let norm = 1.0 / (3.0 * (1.0 + x + 1.0 / x));
    let mut m = ComplexMatrix::zeros(9);
    for i in [0, 4, 8] {
        for j in [0, 4, 8] {
            m[(i, j)] = Complex64::new(norm, 0.0);
        }
    }
    for k in [1, 5, 6] {
        m[(k, k)] = Complex64::new(norm * x, 0.0);
    }
    for k in [2, 3, 7] {
        m[(k, k)] = Complex64::new(norm / x, 0.0);
    }
    Ok(
        DensityMatrix::two_qutrit(m)?.with_provenance(StateFamilyPoint {
            family: StateFamily::TauX,
            parameter: x,
        }),
    )
}

/// Choi state of the SPA map, written out entry by entry.
pub fn spa_choi_state(alpha: f64) -> Result<DensityMatrix> {
    check_alpha(alpha)?;
    let a2 = alpha * alpha;
    let s = (4.0 * a2 + 1.0).sqrt();
    let den = 6.0 * a2 + 9.0 * s - 3.0;
    let corner = (2.0 * a2 + s - 1.0) / den;
    let low = (s - 1.0) / den;
    let high = (s + 1.0) / den;
    let coupling = 2.0 * alpha / -den;
    let far = 2.0 * a2 / -den;

    let diag = [corner, low, high, corner, high, low, low, high, corner];
    let mut m = ComplexMatrix::diag_real(&diag);
    for (i, j, v) in [(0, 4, coupling), (0, 8, far), (5, 7, coupling)] {
        m[(i, j)] = Complex64::new(v, 0.0);
        m[(j, i)] = Complex64::new(v, 0.0);
    }
    Ok(
        DensityMatrix::two_qutrit(m)?.with_provenance(StateFamilyPoint {
            family: StateFamily::SpaChoi,
            parameter: alpha,
        }),
    )
}

/// Both marginals (ρ_A, ρ_B) of a bipartite state.
pub fn reduced_pair(rho: &DensityMatrix) -> Result<(DensityMatrix, DensityMatrix)> {
    let (da, db) = rho.dims;
    let a = partial_trace(&rho.matrix, rho.dims, Subsystem::A)?;
    let b = partial_trace(&rho.matrix, rho.dims, Subsystem::B)?;
    Ok((
        DensityMatrix::new(a, (da, 1))?,
        DensityMatrix::new(b, (db, 1))?,
    ))
}
