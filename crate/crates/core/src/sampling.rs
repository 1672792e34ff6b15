//! Random matrices and states for property checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matrix::{kron, ComplexMatrix};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Entries i.i.d. standard complex Gaussian.
pub fn random_complex_matrix(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| gaussian(rng))
}

/// (G + G†)/2 for a Gaussian G.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = random_complex_matrix(rng, dim);
    (&g + &g.adjoint()).scale(0.5)
}

/// Haar-random unit vector (normalized complex Gaussian).
pub fn random_pure_state(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Full-rank density matrix G G† / Tr(G G†) from the Ginibre ensemble.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = random_complex_matrix(rng, dim);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    w.scale(1.0 / tr)
}

/// ρ_A ⊗ ρ_B with both factors Ginibre-random.
pub fn random_product_density(rng: &mut impl Rng, da: usize, db: usize) -> ComplexMatrix {
    let a = random_density(rng, da);
    let b = random_density(rng, db);
    kron(&a, &b)
}
