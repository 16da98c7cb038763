//! Exact phase-space layer: 4×4 symplectic images of the squeezing family
//! and its elementary Gaussian factors.
//!
//! Every operator handled here acts on the quadrature column vector
//! `R = (q₁, p₁, q₂, p₂)` by a real matrix, `U R U⁻¹ = S R` (see
//! [`crate::conventions`]). The family of interest is block-diagonal in the
//! collective quadratures: on `(q₊, p₊)` it acts by rows `[A, C; B, D]`, on
//! `(q₋, p₋)` by rows `[D, −B; −C, A]`, with `AD − BC = 1`. Both
//! factorizations implemented by [`decompose`] reduce this two-parameter-block
//! action to products of shears and scalings, each realized by a one-parameter
//! unitary subgroup whose generator is a quadratic in the quadratures.
//!
//! Because products of operators map to *reversed* products of their
//! quadrature matrices, [`compose`] multiplies factor matrices right-to-left
//! relative to the written order of a [`FactorSequence`].

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conventions;
use crate::params::AbcdParams;

/// Max-norm tolerance for membership in the symplectic group.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymplecticError {
    #[error("factor sequence is empty")]
    EmptySequence,
    #[error("matrix is not symplectic: ||SJS^T - J||_max = {residual:.3e}")]
    NotSymplectic { residual: f64 },
    #[error("matrix logarithm undefined: eigenvalue {min_eigenvalue:.3e} is not positive")]
    LogDomain { min_eigenvalue: f64 },
}

/// A 4×4 real symplectic matrix in the `(q₁, p₁, q₂, p₂)` basis:
/// `S·J·Sᵀ = J` to [`SYMPLECTIC_TOL`] in max-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticMatrix(Matrix4<f64>);

impl SymplecticMatrix {
    pub fn new(matrix: Matrix4<f64>) -> Result<Self, SymplecticError> {
        let residual = symplectic_residual(&matrix);
        if residual > SYMPLECTIC_TOL {
            return Err(SymplecticError::NotSymplectic { residual });
        }
        Ok(Self(matrix))
    }

    /// Wraps a matrix that is symplectic by construction (products, exact
    /// block forms). Private: external callers go through [`Self::new`].
    fn new_unchecked(matrix: Matrix4<f64>) -> Self {
        Self(matrix)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4<f64> {
        self.0
    }

    /// Entries as nested rows, for serialization.
    pub fn to_rows(self) -> [[f64; 4]; 4] {
        let mut rows = [[0.0; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[(i, j)];
            }
        }
        rows
    }

    /// `‖S·J·Sᵀ − J‖_max` for this matrix.
    pub fn residual(&self) -> f64 {
        symplectic_residual(&self.0)
    }

    /// Exact group inverse `S⁻¹ = J·Sᵀ·Jᵀ` (no linear solve needed).
    pub fn inverse(&self) -> Self {
        let j = conventions::symplectic_form();
        Self::new_unchecked(j * self.0.transpose() * j.transpose())
    }
}

impl std::ops::Mul for SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn mul(self, rhs: SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix::new_unchecked(self.0 * rhs.0)
    }
}

/// One-parameter Gaussian factor appearing in the factorizations.
///
/// Each variant is a unitary `exp(iH)` with `H` quadratic in the quadratures;
/// the parameter scales `H` linearly, so inverses negate it. Generators:
///
/// | variant              | `H`                                        |
/// |----------------------|--------------------------------------------|
/// | `FreePropPlus(χ)`    | `χ·(P₁+P₂)²`                               |
/// | `FreePropMinus(χ)`   | `χ·(P₁−P₂)²`                               |
/// | `CollectiveScale(s)` | `s·Σⱼ (QⱼPⱼ+PⱼQⱼ)/2`                       |
/// | `TwoModeScale(t)`    | `−t·(Q₁P₂+Q₂P₁)`                           |
/// | `ThinLensMinus(κ)`   | `κ·(Q₁−Q₂)²`                               |
/// | `ThinLensPlus(κ)`    | `κ·(Q₁+Q₂)²`                               |
/// | `Su11Plus(θ)`        | `θ·[(Q₁−Q₂)² + (P₁+P₂)²]`                  |
/// | `Su11Mid(s′)`        | `s′·(Q₁P₂+Q₂P₁)`                           |
/// | `Su11Minus(θ)`       | `θ·[(Q₁+Q₂)² + (P₁−P₂)²]`                  |
///
/// The lens/propagation names come from the matrix-optics analogy: squared
/// momenta shear positions (free flight), squared positions shear momenta
/// (thin lens). `TwoModeScale(t)` is exactly the plain two-mode squeezer
/// `exp[t(a₁†a₂† − a₁a₂)]`, and `Su11Mid(s′) = TwoModeScale(−s′)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parameter")]
pub enum GaussianFactor {
    FreePropPlus(f64),
    FreePropMinus(f64),
    CollectiveScale(f64),
    TwoModeScale(f64),
    ThinLensMinus(f64),
    ThinLensPlus(f64),
    Su11Plus(f64),
    Su11Mid(f64),
    Su11Minus(f64),
}

impl GaussianFactor {
    pub fn name(&self) -> &'static str {
        match self {
            Self::FreePropPlus(_) => "FreePropPlus",
            Self::FreePropMinus(_) => "FreePropMinus",
            Self::CollectiveScale(_) => "CollectiveScale",
            Self::TwoModeScale(_) => "TwoModeScale",
            Self::ThinLensMinus(_) => "ThinLensMinus",
            Self::ThinLensPlus(_) => "ThinLensPlus",
            Self::Su11Plus(_) => "Su11Plus",
            Self::Su11Mid(_) => "Su11Mid",
            Self::Su11Minus(_) => "Su11Minus",
        }
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            Self::FreePropPlus(x)
            | Self::FreePropMinus(x)
            | Self::CollectiveScale(x)
            | Self::TwoModeScale(x)
            | Self::ThinLensMinus(x)
            | Self::ThinLensPlus(x)
            | Self::Su11Plus(x)
            | Self::Su11Mid(x)
            | Self::Su11Minus(x) => x,
        }
    }

    /// Inverse factor: same subgroup, negated parameter.
    pub fn inverse(&self) -> Self {
        match *self {
            Self::FreePropPlus(x) => Self::FreePropPlus(-x),
            Self::FreePropMinus(x) => Self::FreePropMinus(-x),
            Self::CollectiveScale(x) => Self::CollectiveScale(-x),
            Self::TwoModeScale(x) => Self::TwoModeScale(-x),
            Self::ThinLensMinus(x) => Self::ThinLensMinus(-x),
            Self::ThinLensPlus(x) => Self::ThinLensPlus(-x),
            Self::Su11Plus(x) => Self::Su11Plus(-x),
            Self::Su11Mid(x) => Self::Su11Mid(-x),
            Self::Su11Minus(x) => Self::Su11Minus(-x),
        }
    }
}

/// Which factorization to emit.
///
/// The serialized names `eq22`/`eq25` are the stable wire tokens used on the
/// command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    /// Six-factor optical form: two free propagations, two scalings, two
    /// thin lenses.
    #[serde(rename = "eq22")]
    OpticalSixFactor,
    /// Three-factor form whose generators close an su(1,1) algebra.
    #[serde(rename = "eq25")]
    Su11Triple,
}

impl Form {
    pub const ALL: [Form; 2] = [Form::OpticalSixFactor, Form::Su11Triple];

    /// Stable wire token (`eq22` / `eq25`).
    pub fn wire_name(&self) -> &'static str {
        match self {
            Form::OpticalSixFactor => "eq22",
            Form::Su11Triple => "eq25",
        }
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.wire_name())
    }
}

impl std::str::FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq22" => Ok(Form::OpticalSixFactor),
            "eq25" => Ok(Form::Su11Triple),
            other => Err(format!("unknown form `{other}` (expected eq22 or eq25)")),
        }
    }
}

/// Selection of factorizations for a verification run: one of the two forms,
/// or both. Wire tokens are `eq22`, `eq25`, `both`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormChoice {
    #[serde(rename = "eq22")]
    OpticalSixFactor,
    #[serde(rename = "eq25")]
    Su11Triple,
    #[serde(rename = "both")]
    Both,
}

impl FormChoice {
    /// The concrete forms the choice expands to.
    pub fn forms(&self) -> &'static [Form] {
        match self {
            FormChoice::OpticalSixFactor => &[Form::OpticalSixFactor],
            FormChoice::Su11Triple => &[Form::Su11Triple],
            FormChoice::Both => &Form::ALL,
        }
    }

    pub fn wire_name(&self) -> &'static str {
        match self {
            FormChoice::OpticalSixFactor => "eq22",
            FormChoice::Su11Triple => "eq25",
            FormChoice::Both => "both",
        }
    }
}

impl From<Form> for FormChoice {
    fn from(form: Form) -> Self {
        match form {
            Form::OpticalSixFactor => FormChoice::OpticalSixFactor,
            Form::Su11Triple => FormChoice::Su11Triple,
        }
    }
}

impl std::fmt::Display for FormChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.wire_name())
    }
}

impl std::str::FromStr for FormChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq22" => Ok(FormChoice::OpticalSixFactor),
            "eq25" => Ok(FormChoice::Su11Triple),
            "both" => Ok(FormChoice::Both),
            other => Err(format!("unknown form `{other}` (expected eq22, eq25, or both)")),
        }
    }
}

/// Non-empty ordered list of factors in operator-product order: the leftmost
/// factor is applied *last* to states, so [`FactorSequence::compose`]
/// multiplies the quadrature matrices in reversed list order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<GaussianFactor>", into = "Vec<GaussianFactor>")]
pub struct FactorSequence {
    factors: Vec<GaussianFactor>,
}

impl FactorSequence {
    pub fn new(factors: Vec<GaussianFactor>) -> Result<Self, SymplecticError> {
        if factors.is_empty() {
            return Err(SymplecticError::EmptySequence);
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[GaussianFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature matrix of the factor product; see [`compose`].
    pub fn compose(&self) -> SymplecticMatrix {
        compose(&self.factors).expect("sequence is non-empty by construction")
    }

    /// Sequence realizing the inverse operator: reversed order, each factor
    /// inverted.
    pub fn inverse(&self) -> Self {
        Self { factors: self.factors.iter().rev().map(GaussianFactor::inverse).collect() }
    }
}

impl TryFrom<Vec<GaussianFactor>> for FactorSequence {
    type Error = SymplecticError;

    fn try_from(factors: Vec<GaussianFactor>) -> Result<Self, Self::Error> {
        Self::new(factors)
    }
}

impl From<FactorSequence> for Vec<GaussianFactor> {
    fn from(seq: FactorSequence) -> Self {
        seq.factors
    }
}

/// `q → q + g·p` within one collective quadrature pair.
fn shear_up(g: f64) -> Matrix2<f64> {
    Matrix2::new(1.0, g, 0.0, 1.0)
}

/// `p → p − g·q` within one collective quadrature pair.
fn shear_down(g: f64) -> Matrix2<f64> {
    Matrix2::new(1.0, 0.0, -g, 1.0)
}

/// `q → e^s q`, `p → e^{−s} p` within one collective quadrature pair.
fn stretch(s: f64) -> Matrix2<f64> {
    Matrix2::new(s.exp(), 0.0, 0.0, (-s).exp())
}

/// 2×2 action of a factor on `(q₊, p₊)` and `(q₋, p₋)` respectively.
///
/// The shear gain is four times the factor parameter: e.g. `χ(P₁+P₂)²` equals
/// `2χ·p₊²`, and `exp(ig·p₊²/2)` shifts `q₊` by `g·p₊`.
fn collective_blocks(factor: GaussianFactor) -> (Matrix2<f64>, Matrix2<f64>) {
    let id = Matrix2::identity();
    match factor {
        GaussianFactor::FreePropPlus(x) => (shear_up(4.0 * x), id),
        GaussianFactor::FreePropMinus(x) => (id, shear_up(4.0 * x)),
        GaussianFactor::CollectiveScale(s) => (stretch(s), stretch(s)),
        GaussianFactor::TwoModeScale(t) => (stretch(-t), stretch(t)),
        GaussianFactor::ThinLensMinus(k) => (id, shear_down(4.0 * k)),
        GaussianFactor::ThinLensPlus(k) => (shear_down(4.0 * k), id),
        GaussianFactor::Su11Plus(th) => (shear_up(4.0 * th), shear_down(4.0 * th)),
        GaussianFactor::Su11Mid(s) => (stretch(s), stretch(-s)),
        GaussianFactor::Su11Minus(th) => (shear_down(4.0 * th), shear_up(4.0 * th)),
    }
}

/// Assembles a 4×4 matrix in the `(q₁, p₁, q₂, p₂)` basis from its collective
/// plus/minus blocks: `S = Tᵀ · diag(plus, minus) · T`.
///
/// Conjugation uses the unnormalized integer basis change with one exact
/// factor `½`, so every entry is a half-sum of block entries with no `1/√2`
/// rounding — identity blocks assemble to the exact identity matrix.
fn from_collective_blocks(plus: &Matrix2<f64>, minus: &Matrix2<f64>) -> Matrix4<f64> {
    let mut block = Matrix4::zeros();
    block.fixed_view_mut::<2, 2>(0, 0).copy_from(plus);
    block.fixed_view_mut::<2, 2>(2, 2).copy_from(minus);
    let u = conventions::collective_from_single_unnormalized();
    u.transpose() * block * u * 0.5
}

/// Quadrature matrix of the squeezing operator with the given parameters:
/// rows `[A, C; B, D]` on `(q₊, p₊)`, rows `[D, −B; −C, A]` on `(q₋, p₋)`.
pub fn target_symplectic(params: AbcdParams) -> SymplecticMatrix {
    let AbcdParams { a, b, c, d } = params;
    let plus = Matrix2::new(a, c, b, d);
    let minus = Matrix2::new(d, -b, -c, a);
    SymplecticMatrix::new_unchecked(from_collective_blocks(&plus, &minus))
}

/// Quadrature matrix of a single factor's unitary (exact, not truncated).
pub fn factor_symplectic(factor: GaussianFactor) -> SymplecticMatrix {
    let (plus, minus) = collective_blocks(factor);
    SymplecticMatrix::new_unchecked(from_collective_blocks(&plus, &minus))
}

/// Emits the factorization of the squeezing operator in the requested form,
/// in operator-product order (leftmost applied last).
///
/// * [`Form::OpticalSixFactor`]: free propagation (+), free propagation (−),
///   collective scaling by `ln√(AD)`, two-mode scaling by `ln√(D/A)`, thin
///   lens (−), thin lens (+).
/// * [`Form::Su11Triple`]: the three su(1,1) exponentials with parameters
///   `C/(4A)`, `ln A`, `−B/(4A)`.
pub fn decompose(params: AbcdParams, form: Form) -> FactorSequence {
    let AbcdParams { a, b, c, d } = params;
    // `+ 0.0` normalizes the negative zero that `−b/(4a)` produces at b = 0,
    // keeping emitted parameters and serialized output sign-clean.
    let factors = match form {
        Form::OpticalSixFactor => vec![
            GaussianFactor::FreePropPlus(c / (4.0 * a) + 0.0),
            GaussianFactor::FreePropMinus(-b / (4.0 * d) + 0.0),
            GaussianFactor::CollectiveScale(0.5 * (a * d).ln() + 0.0),
            GaussianFactor::TwoModeScale(0.5 * (d / a).ln() + 0.0),
            GaussianFactor::ThinLensMinus(c / (4.0 * d) + 0.0),
            GaussianFactor::ThinLensPlus(-b / (4.0 * a) + 0.0),
        ],
        Form::Su11Triple => vec![
            GaussianFactor::Su11Plus(c / (4.0 * a) + 0.0),
            GaussianFactor::Su11Mid(a.ln() + 0.0),
            GaussianFactor::Su11Minus(-b / (4.0 * a) + 0.0),
        ],
    };
    FactorSequence::new(factors).expect("both forms emit factors")
}

/// Quadrature matrix of the operator product `F₁·F₂·…·Fₙ` written in list
/// order: since `U R U⁻¹ = S R` reverses products, this is
/// `S(Fₙ)·…·S(F₁)`.
pub fn compose(factors: &[GaussianFactor]) -> Result<SymplecticMatrix, SymplecticError> {
    if factors.is_empty() {
        return Err(SymplecticError::EmptySequence);
    }
    let mut acc = Matrix4::identity();
    for &factor in factors.iter().rev() {
        acc *= factor_symplectic(factor).into_matrix();
    }
    Ok(SymplecticMatrix::new_unchecked(acc))
}

/// `‖S·J·Sᵀ − J‖_max`: zero iff the matrix is exactly symplectic.
pub fn symplectic_residual(matrix: &Matrix4<f64>) -> f64 {
    let j = conventions::symplectic_form();
    (matrix * j * matrix.transpose() - j).amax()
}

/// Principal logarithm of a symmetric positive-definite 2×2 matrix via its
/// eigendecomposition.
fn symmetric_log_2x2(m: &Matrix2<f64>) -> Result<Matrix2<f64>, SymplecticError> {
    let eig = nalgebra::SymmetricEigen::new(*m);
    let min_eigenvalue = eig.eigenvalues.min();
    if min_eigenvalue <= 0.0 {
        return Err(SymplecticError::LogDomain { min_eigenvalue });
    }
    let log_diag = Matrix2::from_diagonal(&eig.eigenvalues.map(f64::ln));
    Ok(eig.eigenvectors * log_diag * eig.eigenvectors.transpose())
}

/// Residual of the closed-form logarithm of the scaling core.
///
/// The matrix `[[1/(2A)+1/(2D), 1/(2A)−1/(2D)], [1/(2A)−1/(2D),
/// 1/(2A)+1/(2D)]]` has eigenvalues `1/A` and `1/D` on the symmetric and
/// antisymmetric directions, so its principal log must equal
/// `[[−ln√(AD), ln√(D/A)], [ln√(D/A), −ln√(AD)]]`. Returns the max-norm
/// distance between the numerically computed log and that closed form.
pub fn log_identity_residual(params: AbcdParams) -> Result<f64, SymplecticError> {
    let AbcdParams { a, d, .. } = params;
    let diag = 0.5 / a + 0.5 / d;
    let off = 0.5 / a - 0.5 / d;
    let m = Matrix2::new(diag, off, off, diag);
    let log = symmetric_log_2x2(&m)?;
    let half_ln_ad = 0.5 * (a * d).ln();
    let half_ln_da = 0.5 * (d / a).ln();
    let closed = Matrix2::new(-half_ln_ad, half_ln_da, half_ln_da, -half_ln_ad);
    Ok((log - closed).amax())
}
