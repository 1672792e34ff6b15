//! Dense complex matrices for qutrit and two-qutrit operators.
//!
//! Everything here works on small square matrices (3×3 local operators and
//! 9×9 bipartite operators) stored row-major. Eigenvalues come from a cyclic
//! complex Jacobi solver so the crate carries no LAPACK dependency.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used by [`ComplexMatrix::is_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_THRESHOLD: f64 = 1e-14;
const MINOR_IMAG_TOL: f64 = 1e-10;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square matrix of complex scalars, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

/// Wire format shared by every serialized matrix: separate real and
/// imaginary planes, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        let len = json.dim * json.dim;
        if json.dim == 0 {
            return Err(Error::Malformed("field `dim` must be positive".into()));
        }
        if json.re.len() != len {
            return Err(Error::Malformed(format!(
                "field `re` has {} entries, expected dim² = {len}",
                json.re.len()
            )));
        }
        if json.im.len() != len {
            return Err(Error::Malformed(format!(
                "field `im` has {} entries, expected dim² = {len}",
                json.im.len()
            )));
        }
        if let Some(bad) = json.re.iter().chain(&json.im).find(|v| !v.is_finite()) {
            return Err(Error::Malformed(format!("non-finite entry {bad}")));
        }
        let data = json
            .re
            .iter()
            .zip(&json.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        Ok(Self {
            dim: json.dim,
            data,
        })
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        Self {
            dim: m.dim,
            re: m.data.iter().map(|z| z.re).collect(),
            im: m.data.iter().map(|z| z.im).collect(),
        }
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from real rows; panics if the rows are ragged.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must be square");
        Self::from_fn(dim, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn diag_real(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Outer product |v⟩⟨v|.
    pub fn projector(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: impl Into<Complex64>) -> Self {
        let s = s.into();
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise distance to another matrix of the same size.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max_ij |m_ij − conj(m_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= HERMITIAN_TOL * self.max_abs()
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        let tolerance = HERMITIAN_TOL * self.max_abs();
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation,
                tolerance,
            });
        }
        Ok(())
    }

    pub(crate) fn ensure_dim(&self, expected: usize) -> Result<()> {
        if self.dim != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim,
            });
        }
        Ok(())
    }

    /// Block (i, j) of size `block`×`block`.
    pub fn block(&self, i: usize, j: usize, block: usize) -> Self {
        Self::from_fn(block, |k, l| self[(i * block + k, j * block + l)])
    }

    pub fn set_block(&mut self, i: usize, j: usize, value: &Self) {
        let b = value.dim;
        for k in 0..b {
            for l in 0..b {
                self[(i * b + k, j * b + l)] = value[(k, l)];
            }
        }
    }

    /// Matrix-vector product.
    pub fn apply_to(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// ⟨v|M|v⟩
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        let mv = self.apply_to(v);
        v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Which factor of a bipartite space an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Eigenvalues of a Hermitian matrix, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn count_below(&self, threshold: f64) -> usize {
        self.eigenvalues.iter().filter(|&&e| e < threshold).count()
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(m * n);
    for i in 0..m {
        for j in 0..m {
            let aij = a[(i, j)];
            for k in 0..n {
                for l in 0..n {
                    out[(i * n + k, j * n + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

fn check_bipartite(m: &ComplexMatrix, (da, db): (usize, usize)) -> Result<()> {
    m.ensure_dim(da * db)
}

/// Transposes the chosen tensor factor of an operator on C^dA ⊗ C^dB.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dims: (usize, usize),
    subsystem: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, dims)?;
    let (da, db) = dims;
    let mut out = ComplexMatrix::zeros(m.dim);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    let src = match subsystem {
                        Subsystem::B => m[(i * db + l, j * db + k)],
                        Subsystem::A => m[(j * db + k, i * db + l)],
                    };
                    out[(i * db + k, j * db + l)] = src;
                }
            }
        }
    }
    Ok(out)
}

/// Traces out the factor not named by `keep`.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, dims)?;
    let (da, db) = dims;
    Ok(match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, |i, j| {
            (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, |k, l| {
            (0..da).map(|i| m[(i * db + k, i * db + l)]).sum()
        }),
    })
}

/// Tr[x† y].
pub fn hs_inner(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<Complex64> {
    y.ensure_dim(x.dim)?;
    Ok(x.data.iter().zip(&y.data).map(|(a, b)| a.conj() * b).sum())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.dim {
        for j in 0..a.dim {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Returns the ascending spectrum and a unitary whose columns are the
/// matching eigenvectors, so `m ≈ V diag(λ) V†`.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    m.ensure_hermitian()?;
    let n = m.dim;
    // Work on the exactly Hermitian part so the diagonal stays real.
    let mut a = ComplexMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_REL_THRESHOLD * m.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // Strip the phase of a_pq, then apply a real rotation that
                // zeroes the (now real) off-diagonal pair.
                let phase = (apq / mag).conj();
                let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = phase * -s;
                let u_qq = phase * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok((Spectrum { eigenvalues }, vectors))
}

pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    hermitian_eigen(m).map(|(spectrum, _)| spectrum)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.min())
}

/// Determinant by cofactor expansion along the first row. Intended for
/// the tiny blocks used in minor checks.
pub fn determinant(m: &ComplexMatrix) -> Complex64 {
    let idx: Vec<usize> = (0..m.dim).collect();
    cofactor_det(m, &idx, &idx)
}

fn cofactor_det(m: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> Complex64 {
    match rows.len() {
        0 => ONE,
        1 => m[(rows[0], cols[0])],
        2 => {
            m[(rows[0], cols[0])] * m[(rows[1], cols[1])]
                - m[(rows[0], cols[1])] * m[(rows[1], cols[0])]
        }
        _ => {
            let mut det = ZERO;
            let sub_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let entry = m[(rows[0], c)];
                if entry == ZERO {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = entry * cofactor_det(m, sub_rows, &sub_cols);
                if k % 2 == 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            det
        }
    }
}

/// The principal minor on `indices` (rows and columns), which must be real
/// for Hermitian input.
pub fn principal_minor(m: &ComplexMatrix, indices: &[usize]) -> Result<f64> {
    if indices.len() > 4 {
        return Err(Error::DimensionTooLarge {
            max: 4,
            found: indices.len(),
        });
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= m.dim) {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            found: bad + 1,
        });
    }
    let det = cofactor_det(m, indices, indices);
    if det.im.abs() > MINOR_IMAG_TOL {
        return Err(Error::ComplexMinor {
            indices: indices.to_vec(),
            imag: det.im,
        });
    }
    Ok(det.re)
}

/// Every principal minor of a Hermitian matrix of dimension at most 4,
/// keyed by its (ascending) index set.
pub fn all_principal_minors(m: &ComplexMatrix) -> Result<Vec<(Vec<usize>, f64)>> {
    if m.dim > 4 {
        return Err(Error::DimensionTooLarge {
            max: 4,
            found: m.dim,
        });
    }
    let n = m.dim;
    let mut out = Vec::with_capacity((1 << n) - 1);
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor = principal_minor(m, &idx)?;
        out.push((idx, minor));
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Sum of singular values.
///
/// The singular values are read off the Hermitian dilation
/// `[[0, m], [m†, 0]]`, whose spectrum is `±σ_i`; this keeps zero singular
/// values at round-off level instead of the `sqrt(ε)` error of `m†m`.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim;
    if n == 0 {
        return 0.0;
    }
    let dilation = ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, false) => m[(i, j - n)],
        (false, true) => m[(j, i - n)].conj(),
        _ => ZERO,
    });
    // The dilation is Hermitian by construction, so the solver cannot
    // reject it; convergence failure is the only remaining error path.
    let spectrum = hermitian_eigenvalues(&dilation).expect("Jacobi on Hermitian dilation");
    spectrum.eigenvalues().iter().map(|e| e.abs()).sum::<f64>() / 2.0
}
