use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choi::ChoiMatrix;
use crate::error::Result;
use crate::matrix::{hermitian_eigen, hs_inner, kron_vec, ComplexMatrix};
use crate::sampling::random_pure_state;
use crate::states::DensityMatrix;

/// Hermitian 9×9 operator intended to be non-negative on product states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessOperator {
    pub matrix: ComplexMatrix,
    pub label: String,
}

impl WitnessOperator {
    pub fn new(matrix: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        matrix.ensure_dim(9)?;
        matrix.ensure_hermitian()?;
        Ok(Self {
            matrix,
            label: label.into(),
        })
    }

    pub fn from_choi(choi: &ChoiMatrix) -> Result<Self> {
        Self::new(choi.matrix.clone(), format!("choi[{}]", choi.source))
    }

    /// Smallest ⟨γδ|W|γδ⟩ over `samples` Haar-random product vectors.
    pub fn block_positivity_spot_check(&self, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let g = random_pure_state(&mut rng, 3);
                let d = random_pure_state(&mut rng, 3);
                product_expectation(&self.matrix, &g, &d)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Re ⟨γ⊗δ| W |γ⊗δ⟩
pub fn product_expectation(w: &ComplexMatrix, gamma: &[Complex64], delta: &[Complex64]) -> f64 {
    w.expectation(&kron_vec(gamma, delta)).re
}

/// Tr[W ρ]
pub fn witness_value(w: &WitnessOperator, rho: &DensityMatrix) -> Result<f64> {
    let v = hs_inner(&w.matrix, rho.matrix())?;
    debug_assert!(v.im.abs() < 1e-12, "imaginary witness value {}", v.im);
    Ok(v.re)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakOptimality {
    pub found: bool,
    pub gamma: Vec<Complex64>,
    pub delta: Vec<Complex64>,
    pub value: f64,
}

/// Unit vector (cos θ₁, sin θ₁ cos θ₂ e^{iφ₁}, sin θ₁ sin θ₂ e^{iφ₂}).
/// Covers every unit 3-vector up to a global phase.
pub fn unit_vector_from_angles(angles: [f64; 4]) -> Vec<Complex64> {
    let [t1, t2, p1, p2] = angles;
    vec![
        Complex64::new(t1.cos(), 0.0),
        Complex64::from_polar(t1.sin() * t2.cos(), p1),
        Complex64::from_polar(t1.sin() * t2.sin(), p2),
    ]
}

/// (⟨γ|⊗𝕀) W (|γ⟩⊗𝕀)
fn contract_first(w: &ComplexMatrix, gamma: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(3, |k, l| {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                s += gamma[i].conj() * gamma[j] * w[(3 * i + k, 3 * j + l)];
            }
        }
        s
    })
}

/// min over δ of ⟨γδ|W|γδ⟩ and its minimiser.
fn best_delta(w: &ComplexMatrix, gamma: &[Complex64]) -> (f64, Vec<Complex64>) {
    let local = contract_first(w, gamma);
    let (spec, vecs) =
        hermitian_eigen(&local).expect("contraction of a Hermitian operator is Hermitian");
    let delta = (0..3).map(|r| vecs[(r, 0)]).collect();
    (spec.min(), delta)
}

const GRID_POINTS: usize = 12;
const MIN_STEP: f64 = 1e-10;
const ZERO_TOLERANCE: f64 = 1e-9;

fn grid_angles(index: usize) -> [f64; 4] {
    let theta = |k: usize| FRAC_PI_2 * k as f64 / (GRID_POINTS - 1) as f64;
    let phi = |k: usize| 2.0 * PI * k as f64 / GRID_POINTS as f64;
    let d = [
        index % GRID_POINTS,
        (index / GRID_POINTS) % GRID_POINTS,
        (index / GRID_POINTS.pow(2)) % GRID_POINTS,
        index / GRID_POINTS.pow(3),
    ];
    [theta(d[0]), theta(d[1]), phi(d[2]), phi(d[3])]
}

/// Searches for a product vector on which the witness vanishes.
///
/// The minimisation over δ is done exactly (least eigenvalue of the
/// contracted 3×3 operator), so only γ is searched: a 12⁴ grid over its
/// four angles followed by coordinate descent with step halving down to
/// 1e-10. The grid is evaluated in parallel; ties resolve to the lowest
/// grid index so the result is deterministic.
pub fn weak_optimality_check(w: &WitnessOperator) -> WeakOptimality {
    let m = &w.matrix;
    let objective = |angles: [f64; 4]| best_delta(m, &unit_vector_from_angles(angles)).0;

    let (_, start) = (0..GRID_POINTS.pow(4))
        .into_par_iter()
        .map(|i| (objective(grid_angles(i)), i))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("non-empty grid");

    let mut angles = grid_angles(start);
    let mut value = objective(angles);
    let mut step = FRAC_PI_2 / (GRID_POINTS - 1) as f64;
    while step >= MIN_STEP {
        let mut improved = false;
        for coord in 0..4 {
            for dir in [1.0, -1.0] {
                let mut trial = angles;
                trial[coord] += dir * step;
                let v = objective(trial);
                if v < value {
                    angles = trial;
                    value = v;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let gamma = unit_vector_from_angles(angles);
    let (value, delta) = best_delta(m, &gamma);
    WeakOptimality {
        found: value <= ZERO_TOLERANCE,
        gamma,
        delta,
        value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choi::choi_of;
    use crate::maps::QutritMapSpec;
    use crate::matrix::{partial_transpose, Subsystem};
    use crate::states::{max_entangled, tau_x};
    use approx::assert_abs_diff_eq;

    fn c_lambda(alpha: f64) -> WitnessOperator {
        WitnessOperator::from_choi(&choi_of(&QutritMapSpec::lambda_alpha(alpha).unwrap()).unwrap())
            .unwrap()
    }

    fn uniform() -> Vec<Complex64> {
        vec![Complex64::new(1.0 / 3f64.sqrt(), 0.0); 3]
    }

    #[test]
    fn witness_on_tau_closed_form() {
        let w = c_lambda(1.0);
        for x in [1.0, 2.0, 3.0, 4.0, 10.0] {
            let expected = (3.0 - x) / (18.0 * (x * x + x + 1.0));
            assert_abs_diff_eq!(
                witness_value(&w, &tau_x(x).unwrap()).unwrap(),
                expected,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn witness_on_max_entangled_and_mixed() {
        let w = c_lambda(1.0);
        let phi = max_entangled(3).unwrap();
        let value = witness_value(&w, &phi).unwrap();
        // Tr[C |Φ⁺⟩⟨Φ⁺|] = (1/3) Σ_ij C_{ii,jj}
        let mut manual = 0.0;
        for i in [0, 4, 8] {
            for j in [0, 4, 8] {
                manual += w.matrix[(i, j)].re / 3.0;
            }
        }
        assert_abs_diff_eq!(value, manual, epsilon = 1e-14);

        let mixed = DensityMatrix::two_qutrit(ComplexMatrix::identity(9).scale(1.0 / 9.0)).unwrap();
        assert_abs_diff_eq!(
            witness_value(&w, &mixed).unwrap(),
            w.matrix.trace().re / 9.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn zero_on_uniform_product_vector() {
        let w = c_lambda(1.0);
        assert!(product_expectation(&w.matrix, &uniform(), &uniform()).abs() < 1e-12);
    }

    #[test]
    fn weak_optimality_of_c_lambda_one() {
        let res = weak_optimality_check(&c_lambda(1.0));
        assert!(res.found, "minimum {}", res.value);
        assert!(res.value.abs() <= 1e-9);
        let v = product_expectation(&c_lambda(1.0).matrix, &res.gamma, &res.delta);
        assert_abs_diff_eq!(v, res.value, epsilon = 1e-12);
    }

    #[test]
    fn identity_is_not_weakly_optimal() {
        let w = WitnessOperator::new(ComplexMatrix::identity(9), "identity").unwrap();
        let res = weak_optimality_check(&w);
        assert!(!res.found);
        assert_abs_diff_eq!(res.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn flip_operator_touches_zero() {
        let flip =
            partial_transpose(max_entangled(3).unwrap().matrix(), (3, 3), Subsystem::B).unwrap();
        let e0 = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let e1 = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert_eq!(product_expectation(&flip, &e0, &e1), 0.0);
        let res = weak_optimality_check(&WitnessOperator::new(flip, "swap/3").unwrap());
        assert!(res.found);
    }

    #[test]
    fn block_positivity_of_choi_witnesses() {
        for alpha in [0.1, 0.25, 0.5, 0.75, 1.0] {
            let min = c_lambda(alpha).block_positivity_spot_check(10_000, 5);
            assert!(min >= -1e-10, "alpha {alpha}: {min}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(9);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        assert!(WitnessOperator::new(m, "bad").is_err());
        assert!(WitnessOperator::new(ComplexMatrix::identity(3), "small").is_err());
    }
}
