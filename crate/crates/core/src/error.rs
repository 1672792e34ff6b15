use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max |m_ij - conj(m_ji)| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("parameter {name} = {value} outside domain {domain}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid density matrix: {invariant} violated by {margin:.3e}")]
    InvalidDensityMatrix {
        invariant: &'static str,
        margin: f64,
    },

    #[error("principal minor over {indices:?} has imaginary part {imag:.3e}")]
    ComplexMinor { indices: Vec<usize>, imag: f64 },

    #[error("dimension {found} exceeds the supported maximum {max}")]
    DimensionTooLarge { max: usize, found: usize },

    #[error("malformed matrix data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
