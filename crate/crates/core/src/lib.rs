//! Indecomposable positive maps on qutrits and the constructions built on
//! them: Choi matrices, the τ_x PPT family, witnesses, the structural
//! physical approximation, and entanglement criteria.

pub mod choi;
pub mod detection;
pub mod error;
pub mod maps;
pub mod matrix;
pub mod sampling;
pub mod states;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Spectrum, Subsystem};
pub use num_complex::Complex64;
