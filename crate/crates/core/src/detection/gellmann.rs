use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::{hs_inner, kron, ComplexMatrix};

/// 𝕀₃ followed by the eight Gell-Mann matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct GellMannBasis {
    pub matrices: Vec<ComplexMatrix>,
    /// Tr(G_i²)
    pub norms: Vec<f64>,
}

impl GellMannBasis {
    /// G_i / √Tr(G_i²)
    pub fn orthonormal(&self) -> Vec<ComplexMatrix> {
        self.matrices
            .iter()
            .zip(&self.norms)
            .map(|(g, n)| g.scale(1.0 / n.sqrt()))
            .collect()
    }
}

fn sparse(entries: &[(usize, usize, Complex64)], scale: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3);
    for &(i, j, v) in entries {
        m[(i, j)] = v * scale;
    }
    m
}

/// Ordering: G1 = 𝕀, G2/G3 the (1,2) symmetric/antisymmetric pair, G4 the
/// (1,−1,0) diagonal, G5/G6 the (1,3) pair, G7/G8 the (2,3) pair, G9 the
/// (1,1,−2)/√3 diagonal.
pub fn gellmann_basis() -> GellMannBasis {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let matrices = vec![
        ComplexMatrix::identity(3),
        sparse(&[(0, 1, one), (1, 0, one)], 1.0),
        sparse(&[(0, 1, -i), (1, 0, i)], 1.0),
        sparse(&[(0, 0, one), (1, 1, -one)], 1.0),
        sparse(&[(0, 2, one), (2, 0, one)], 1.0),
        sparse(&[(0, 2, -i), (2, 0, i)], 1.0),
        sparse(&[(1, 2, one), (2, 1, one)], 1.0),
        sparse(&[(1, 2, -i), (2, 1, i)], 1.0),
        sparse(
            &[(0, 0, one), (1, 1, one), (2, 2, -2.0 * one)],
            1.0 / 3f64.sqrt(),
        ),
    ];
    let norms = matrices
        .iter()
        .map(|g| hs_inner(g, g).expect("3x3").re)
        .collect();
    GellMannBasis { matrices, norms }
}

/// Coefficients c_ij with W = Σ c_ij G_i ⊗ G_j (0-based indices).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GellMannCoefficients {
    pub c: [[f64; 9]; 9],
}

impl GellMannCoefficients {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let basis = gellmann_basis();
        let mut out = ComplexMatrix::zeros(9);
        for (i, gi) in basis.matrices.iter().enumerate() {
            for (j, gj) in basis.matrices.iter().enumerate() {
                if self.c[i][j] != 0.0 {
                    out = &out + &kron(gi, gj).scale(self.c[i][j]);
                }
            }
        }
        out
    }

    /// Non-zero terms as (i, j, c_ij) with 1-based indices, row-major.
    pub fn nonzero_terms(&self, tol: f64) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..9 {
            for j in 0..9 {
                if self.c[i][j].abs() > tol {
                    out.push((i + 1, j + 1, self.c[i][j]));
                }
            }
        }
        out
    }
}

/// Hilbert-Schmidt projection of a Hermitian 9×9 operator onto
/// {G_i ⊗ G_j}.
pub fn decompose_in_gellmann(w: &ComplexMatrix) -> Result<GellMannCoefficients> {
    w.ensure_dim(9)?;
    w.ensure_hermitian()?;
    let basis = gellmann_basis();
    let mut c = [[0.0; 9]; 9];
    for (i, gi) in basis.matrices.iter().enumerate() {
        for (j, gj) in basis.matrices.iter().enumerate() {
            let proj = hs_inner(&kron(gi, gj), w)?;
            debug_assert!(proj.im.abs() < 1e-12 * (1.0 + w.max_abs()));
            c[i][j] = proj.re / (basis.norms[i] * basis.norms[j]);
        }
    }
    Ok(GellMannCoefficients { c })
}
