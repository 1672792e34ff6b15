//! Linear maps on 3×3 matrices, given by their entrywise action.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::choi::spa_parameters;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};

pub const QUTRIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    LambdaAlpha,
    LambdaAlphaDual,
    SpaLambdaAlpha,
    ChoiMap,
    MillerOlkiewicz,
    Depolarizing,
    Transposition,
    Identity,
}

impl MapKind {
    pub fn is_parameterized(self) -> bool {
        matches!(
            self,
            MapKind::LambdaAlpha | MapKind::LambdaAlphaDual | MapKind::SpaLambdaAlpha
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            MapKind::LambdaAlpha => "lambda-alpha",
            MapKind::LambdaAlphaDual => "lambda-alpha-dual",
            MapKind::SpaLambdaAlpha => "spa-lambda-alpha",
            MapKind::ChoiMap => "choi-map",
            MapKind::MillerOlkiewicz => "miller-olkiewicz",
            MapKind::Depolarizing => "depolarizing",
            MapKind::Transposition => "transposition",
            MapKind::Identity => "identity",
        }
    }
}

/// A named map on 𝕄₃, with its parameter when the kind has one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMapSpec")]
pub struct QutritMapSpec {
    kind: MapKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
}

#[derive(Deserialize)]
struct RawMapSpec {
    kind: MapKind,
    alpha: Option<f64>,
}

impl TryFrom<RawMapSpec> for QutritMapSpec {
    type Error = Error;

    fn try_from(raw: RawMapSpec) -> Result<Self> {
        QutritMapSpec::new(raw.kind, raw.alpha)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name: "alpha",
            value: alpha,
            domain: "(0, 1]",
        })
    }
}

impl QutritMapSpec {
    pub fn new(kind: MapKind, alpha: Option<f64>) -> Result<Self> {
        match (kind.is_parameterized(), alpha) {
            (true, Some(a)) => check_alpha(a)?,
            (true, None) => {
                return Err(Error::Malformed(format!(
                    "map kind `{}` requires field `alpha`",
                    kind.name()
                )))
            }
            (false, Some(_)) => {
                return Err(Error::Malformed(format!(
                    "map kind `{}` takes no `alpha`",
                    kind.name()
                )))
            }
            (false, None) => {}
        }
        Ok(Self { kind, alpha })
    }

    pub fn lambda_alpha(alpha: f64) -> Result<Self> {
        Self::new(MapKind::LambdaAlpha, Some(alpha))
    }

    pub fn lambda_alpha_dual(alpha: f64) -> Result<Self> {
        Self::new(MapKind::LambdaAlphaDual, Some(alpha))
    }

    pub fn spa(alpha: f64) -> Result<Self> {
        Self::new(MapKind::SpaLambdaAlpha, Some(alpha))
    }

    pub fn choi_map() -> Self {
        Self {
            kind: MapKind::ChoiMap,
            alpha: None,
        }
    }

    pub fn miller_olkiewicz() -> Self {
        Self {
            kind: MapKind::MillerOlkiewicz,
            alpha: None,
        }
    }

    pub fn depolarizing() -> Self {
        Self {
            kind: MapKind::Depolarizing,
            alpha: None,
        }
    }

    pub fn transposition() -> Self {
        Self {
            kind: MapKind::Transposition,
            alpha: None,
        }
    }

    pub fn identity() -> Self {
        Self {
            kind: MapKind::Identity,
            alpha: None,
        }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let alpha = || self.alpha.expect("validated at construction");
        match self.kind {
            MapKind::LambdaAlpha => apply_lambda_alpha(alpha(), x),
            MapKind::LambdaAlphaDual => apply_lambda_alpha_dual(alpha(), x),
            MapKind::SpaLambdaAlpha => apply_spa(alpha(), x),
            MapKind::ChoiMap => apply_choi_map(x),
            MapKind::MillerOlkiewicz => apply_miller_olkiewicz(x),
            MapKind::Depolarizing => apply_depolarizing(QUTRIT, x),
            MapKind::Transposition => {
                x.ensure_dim(QUTRIT)?;
                Ok(x.transpose())
            }
            MapKind::Identity => {
                x.ensure_dim(QUTRIT)?;
                Ok(x.clone())
            }
        }
    }
}

impl fmt::Display for QutritMapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha {
            Some(a) => write!(f, "{}({a})", self.kind.name()),
            None => f.write_str(self.kind.name()),
        }
    }
}

fn from_rows(rows: [[Complex64; 3]; 3]) -> ComplexMatrix {
    ComplexMatrix::from_fn(3, |i, j| rows[i][j])
}

/// The one-parameter family Λ_α, normalised by 1/(α + 1/α) so that it is
/// trace preserving. Note the (2,3)/(3,2) entries pick up x₃₂ and x₂₃.
pub fn apply_lambda_alpha(alpha: f64, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_alpha(alpha)?;
    m.ensure_dim(QUTRIT)?;
    let x = |i: usize, j: usize| m[(i, j)];
    let n = 1.0 / (alpha + 1.0 / alpha);
    let a = alpha;
    Ok(from_rows([
        [a * (x(0, 0) + x(1, 1)), -x(0, 1), -x(0, 2) * a],
        [-x(1, 0), (x(1, 1) + x(2, 2)) / a, -x(2, 1)],
        [-x(2, 0) * a, -x(1, 2), x(2, 2) * a + x(0, 0) / a],
    ])
    .scale(n))
}

/// Hilbert-Schmidt adjoint of Λ_α: ⟨Λ†(X), Y⟩ = ⟨X, Λ(Y)⟩ for all X, Y.
///
/// Unital rather than trace preserving. At α = 1 the diagonal reduces to
/// ((x₁₁+x₃₃), (x₁₁+x₂₂), (x₂₂+x₃₃))/2.
pub fn apply_lambda_alpha_dual(alpha: f64, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_alpha(alpha)?;
    m.ensure_dim(QUTRIT)?;
    let x = |i: usize, j: usize| m[(i, j)];
    let n = 1.0 / (alpha + 1.0 / alpha);
    let a = alpha;
    Ok(from_rows([
        [x(0, 0) * a + x(2, 2) / a, -x(0, 1), -x(0, 2) * a],
        [-x(1, 0), x(0, 0) * a + x(1, 1) / a, -x(2, 1)],
        [-x(2, 0) * a, -x(1, 2), x(1, 1) / a + x(2, 2) * a],
    ])
    .scale(n))
}

/// Choi's original indecomposable map on 𝕄₃.
pub fn apply_choi_map(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.ensure_dim(QUTRIT)?;
    let x = |i: usize, j: usize| m[(i, j)];
    Ok(from_rows([
        [x(0, 0) + x(2, 2), -x(0, 1), -x(0, 2)],
        [-x(1, 0), x(1, 1) + x(0, 0), -x(1, 2)],
        [-x(2, 0), -x(2, 1), x(2, 2) + x(1, 1)],
    ]))
}

/// Miller–Olkiewicz map on 𝕄₃.
pub fn apply_miller_olkiewicz(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.ensure_dim(QUTRIT)?;
    let x = |i: usize, j: usize| m[(i, j)];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let top = (x(0, 0) + x(1, 1)) * 0.5;
    Ok(from_rows([
        [top, ZERO, x(0, 2) * r],
        [ZERO, top, x(2, 1) * r],
        [x(2, 0) * r, x(1, 2) * r, x(2, 2)],
    ]))
}

/// Tr(X)/d · 𝕀_d
pub fn apply_depolarizing(d: usize, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.ensure_dim(d)?;
    Ok(ComplexMatrix::identity(d).scale(m.trace() / d as f64))
}

/// Structural physical approximation of Λ_α in closed form.
///
/// In debug builds the result is checked against the defining mixture
/// [`apply_spa_mixture`].
pub fn apply_spa(alpha: f64, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_alpha(alpha)?;
    m.ensure_dim(QUTRIT)?;
    let x = |i: usize, j: usize| m[(i, j)];
    let a2 = alpha * alpha;
    let s = (4.0 * a2 + 1.0).sqrt();
    let den = 2.0 * a2 + 3.0 * s - 1.0;
    let off1 = -2.0 * alpha / den;
    let off2 = -2.0 * a2 / den;
    let out = from_rows([
        [
            (x(2, 2) * (s - 1.0) + (x(0, 0) + x(1, 1)) * (2.0 * a2 + s - 1.0)) / den,
            x(0, 1) * off1,
            x(0, 2) * off2,
        ],
        [
            x(1, 0) * off1,
            (x(0, 0) * (s - 1.0) + (x(1, 1) + x(2, 2)) * (s + 1.0)) / den,
            x(2, 1) * off1,
        ],
        [
            x(2, 0) * off2,
            x(1, 2) * off1,
            (-x(1, 1) + x(2, 2) * (2.0 * a2 - 1.0) + x(0, 0) * (s + 1.0) + (x(1, 1) + x(2, 2)) * s)
                / den,
        ],
    ]);
    #[cfg(debug_assertions)]
    {
        let mixed = apply_spa_mixture(alpha, m)?;
        let gap = out.max_abs_diff(&mixed);
        debug_assert!(
            gap <= 1e-12 * (1.0 + m.max_abs()),
            "closed-form SPA disagrees with mixture by {gap:e}"
        );
    }
    Ok(out)
}

/// p*·Λ_dep(X) + (1 − p*)·Λ_α(X), the defining convex mixture of the SPA.
pub fn apply_spa_mixture(alpha: f64, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let p = spa_parameters(alpha)?.p_star;
    let dep = apply_depolarizing(QUTRIT, m)?;
    let lam = apply_lambda_alpha(alpha, m)?;
    Ok(&dep.scale(p) + &lam.scale(1.0 - p))
}

/// (𝕀 ⊗ Λ)(ρ): applies the map to every 3×3 block of a 9×9 operator.
pub fn extend_one_sided(map: &QutritMapSpec, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    rho.ensure_dim(QUTRIT * QUTRIT)?;
    let mut out = ComplexMatrix::zeros(QUTRIT * QUTRIT);
    for i in 0..QUTRIT {
        for j in 0..QUTRIT {
            let image = map.apply(&rho.block(i, j, QUTRIT))?;
            out.set_block(i, j, &image);
        }
    }
    Ok(out)
}
