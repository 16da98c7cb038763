//! Residual diagnostics connecting the truncated Fock layer back to the
//! exact 4×4 phase-space layer.
//!
//! Every check here follows the same pattern: realize an operator on the
//! truncated space, form the quantity that would vanish identically on the
//! infinite space, compress it to the interior block, and report a norm.
//! Interior compression matters because truncated quadratures violate the
//! canonical commutation relations in a band near the truncation edge; the
//! residuals are meaningful measures of realization error only away from
//! that band.
//!
//! Two kinds of checks live here:
//!
//! - **Operator identities** ([`heisenberg_residuals`], [`su11_residuals`],
//!   [`form_equivalence_residual`]): conjugation laws and commutator
//!   relations among the collective quadratures.
//! - **State-level cross-checks** ([`vacuum_covariance`]): second moments of
//!   the transformed vacuum against the symplectic prediction.

use ndarray::Array2;
use ndarray_linalg::{EigValsh, UPLO};
use num_complex::Complex64 as C64;

use crate::fock::{adjoint, inner, max_abs, FockOperator, FockSpace, Mode, QuadratureKind};
use crate::params::AbcdParams;
use crate::symplectic::{target_symplectic, GaussianFactor};

/// Relative interior residuals of the four collective conjugation laws
/// `U X U† = αX + βY`, one per collective quadrature line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergResiduals {
    /// `U (Q₁+Q₂) U† − [A(Q₁+Q₂) + C(P₁+P₂)]`
    pub q_plus: f64,
    /// `U (P₁+P₂) U† − [D(P₁+P₂) + B(Q₁+Q₂)]`
    pub p_plus: f64,
    /// `U (P₁−P₂) U† − [A(P₁−P₂) − C(Q₁−Q₂)]`
    pub p_minus: f64,
    /// `U (Q₁−Q₂) U† − [D(Q₁−Q₂) − B(P₁−P₂)]`
    pub q_minus: f64,
}

impl HeisenbergResiduals {
    /// Largest of the four line residuals.
    pub fn max(&self) -> f64 {
        self.q_plus.max(self.p_plus).max(self.p_minus).max(self.q_minus)
    }

    /// The residuals with their stable report labels.
    pub fn named(&self) -> [(&'static str, f64); 4] {
        [
            ("q_plus", self.q_plus),
            ("p_plus", self.p_plus),
            ("p_minus", self.p_minus),
            ("q_minus", self.q_minus),
        ]
    }
}

/// Interior commutator residuals of the three su(1,1) relations, plus the
/// same norms without interior projection (reported for context only; the
/// unprojected values are edge-dominated and carry no accuracy claim).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Residuals {
    /// `[K₊, K₋] − 2K₀` on the interior.
    pub plus_minus: f64,
    /// `[K₀, K₊] − K₊` on the interior.
    pub zero_plus: f64,
    /// `[K₀, K₋] + K₋` on the interior.
    pub zero_minus: f64,
    /// `[K₊, K₋] − 2K₀` over the whole truncated space.
    pub raw_plus_minus: f64,
    /// `[K₀, K₊] − K₊` over the whole truncated space.
    pub raw_zero_plus: f64,
    /// `[K₀, K₋] + K₋` over the whole truncated space.
    pub raw_zero_minus: f64,
}

impl Su11Residuals {
    /// Largest interior residual.
    pub fn max(&self) -> f64 {
        self.plus_minus.max(self.zero_plus).max(self.zero_minus)
    }
}

/// Covariance matrix of a transformed vacuum with its deviation from the
/// symplectic-layer prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceCheck {
    /// Symmetrized covariance `σ_ij = ⟨{R_i,R_j}/2⟩ − ⟨R_i⟩⟨R_j⟩` of
    /// `U|00⟩` in the `(Q₁,P₁,Q₂,P₂)` ordering.
    pub covariance: [[f64; 4]; 4],
    /// `‖σ − S⁻¹·(I/2)·S⁻ᵀ‖_max` with `S` the target symplectic matrix.
    pub residual: f64,
}

/// Spectral norm of a Hermitian matrix (largest absolute eigenvalue).
fn spectral_norm_hermitian(m: &FockOperator) -> f64 {
    let eigenvalues = m
        .eigvalsh(UPLO::Lower)
        .expect("Hermitian eigenvalue computation");
    eigenvalues.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()))
}

/// The four collective quadratures `(q₊, p₊, q₋, p₋)` as truncated matrices.
fn collective_quadratures(space: &FockSpace) -> [FockOperator; 4] {
    let q1 = space.quadrature(Mode::One, QuadratureKind::Position);
    let p1 = space.quadrature(Mode::One, QuadratureKind::Momentum);
    let q2 = space.quadrature(Mode::Two, QuadratureKind::Position);
    let p2 = space.quadrature(Mode::Two, QuadratureKind::Momentum);
    [q1 + q2, p1 + p2, q1 - q2, p1 - p2]
}

/// Measures how well `u` realizes the collective conjugation laws for the
/// given parameters.
///
/// Each line reports `‖Π(U X U† − αX − βY)Π‖₂ / ‖ΠXΠ‖₂` in the spectral
/// norm, with `Π` the interior projector of `space`. The four `(X, α, Y, β)`
/// tuples are the rows of the target symplectic matrix expressed on the
/// collective quadratures.
pub fn heisenberg_residuals(
    u: &FockOperator,
    params: AbcdParams,
    space: &FockSpace,
) -> HeisenbergResiduals {
    let [q_plus, p_plus, q_minus, p_minus] = collective_quadratures(space);
    let (a, b, c, d) = (params.a, params.b, params.c, params.d);
    let ud = adjoint(u);
    let line = |x: &FockOperator, alpha: f64, y: &FockOperator, beta: f64| -> f64 {
        let conjugated = u.dot(x).dot(&ud);
        let target = x * C64::new(alpha, 0.0) + y * C64::new(beta, 0.0);
        let deviation = space.compress_operator(&(&conjugated - &target));
        spectral_norm_hermitian(&deviation) / spectral_norm_hermitian(&space.compress_operator(x))
    };
    HeisenbergResiduals {
        q_plus: line(&q_plus, a, &p_plus, c),
        p_plus: line(&p_plus, d, &q_plus, b),
        p_minus: line(&p_minus, a, &q_minus, -c),
        q_minus: line(&q_minus, d, &p_minus, -b),
    }
}

/// Verifies the su(1,1) algebra closed by the three-factor form's
/// generators.
///
/// With `K₊ = [(Q₁−Q₂)² + (P₁+P₂)²]/4`, `K₋ = [(Q₁+Q₂)² + (P₁−P₂)²]/4`
/// and `K₀ = (−i/2)(Q₁P₂+Q₂P₁)`, the exact algebra is
///
/// ```text
/// [K₊, K₋] = 2K₀,   [K₀, K₊] = K₊,   [K₀, K₋] = −K₋.
/// ```
///
/// These are polynomial identities in the ladder operators, so the interior
/// residuals are at rounding level for any margin ≥ 2 and do not change
/// with `n_max`. The unprojected residuals are edge-dominated and are
/// reported for context only.
pub fn su11_residuals(space: &FockSpace) -> Su11Residuals {
    let [q_plus, p_plus, q_minus, p_minus] = collective_quadratures(space);
    let quarter = C64::new(0.25, 0.0);
    let k_plus = (q_minus.dot(&q_minus) + p_plus.dot(&p_plus)) * quarter;
    let k_minus = (q_plus.dot(&q_plus) + p_minus.dot(&p_minus)) * quarter;
    let q1 = space.quadrature(Mode::One, QuadratureKind::Position);
    let p1 = space.quadrature(Mode::One, QuadratureKind::Momentum);
    let q2 = space.quadrature(Mode::Two, QuadratureKind::Position);
    let p2 = space.quadrature(Mode::Two, QuadratureKind::Momentum);
    let k_zero = (q1.dot(p2) + q2.dot(p1)) * C64::new(0.0, -0.5);

    let commutator = |x: &FockOperator, y: &FockOperator| x.dot(y) - y.dot(x);
    let dev_plus_minus = commutator(&k_plus, &k_minus) - &k_zero * C64::new(2.0, 0.0);
    let dev_zero_plus = commutator(&k_zero, &k_plus) - &k_plus;
    let dev_zero_minus = commutator(&k_zero, &k_minus) + &k_minus;

    Su11Residuals {
        plus_minus: max_abs(&space.compress_operator(&dev_plus_minus)),
        zero_plus: max_abs(&space.compress_operator(&dev_zero_plus)),
        zero_minus: max_abs(&space.compress_operator(&dev_zero_minus)),
        raw_plus_minus: max_abs(&dev_plus_minus),
        raw_zero_plus: max_abs(&dev_zero_plus),
        raw_zero_minus: max_abs(&dev_zero_minus),
    }
}

/// Phase-aligned interior deviation between the two factorizations of the
/// middle segment of the six-factor form.
///
/// The four-factor group (free propagation in the minus sector, dilation,
/// two-mode scale, thin lens in the minus sector) and its three-factor
/// rewriting (thin lens, cross-mode scale, free propagation) compose to the
/// same phase-space matrix, so their truncated realizations should agree on
/// the interior up to a global phase. The phase is fixed on the first
/// interior matrix element of largest magnitude; the return value is the
/// max-norm of the aligned difference.
pub fn form_equivalence_residual(params: AbcdParams, space: &FockSpace) -> f64 {
    let (a, b, c, d) = (params.a, params.b, params.c, params.d);
    let four_factor = [
        GaussianFactor::FreePropMinus(-b / (4.0 * d)),
        GaussianFactor::CollectiveScale(0.5 * (a * d).ln()),
        GaussianFactor::TwoModeScale(0.5 * (d / a).ln()),
        GaussianFactor::ThinLensMinus(c / (4.0 * d)),
    ];
    let three_factor = [
        GaussianFactor::ThinLensMinus(c / (4.0 * a)),
        GaussianFactor::Su11Mid(a.ln()),
        GaussianFactor::FreePropMinus(-b / (4.0 * a)),
    ];
    let reference = space.compress_operator(&space.realize_sequence(&four_factor));
    let rewritten = space.compress_operator(&space.realize_sequence(&three_factor));
    max_abs(&(&rewritten - &phase_aligned(&reference, &rewritten)))
}

/// Scales `reference` by the unit phase that matches it to `other` at the
/// first entry where `reference` attains its largest magnitude.
fn phase_aligned(reference: &Array2<C64>, other: &Array2<C64>) -> Array2<C64> {
    let mut anchor = (0usize, 0usize);
    let mut largest = 0.0f64;
    for ((i, j), z) in reference.indexed_iter() {
        if z.norm() > largest {
            largest = z.norm();
            anchor = (i, j);
        }
    }
    let ratio = other[anchor] / reference[anchor];
    let phase = if ratio.norm() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        ratio / C64::new(ratio.norm(), 0.0)
    };
    reference * phase
}

/// Covariance of `U|00⟩` against the symplectic prediction.
///
/// With the convention `U R U† = S R` used throughout, the state `U|00⟩`
/// has covariance `S⁻¹·(I/2)·S⁻ᵀ` (conjugating the operators by `U` moves
/// the state the other way), which is what the residual compares against.
/// The covariance itself is computed over the whole truncated space; the
/// transformed vacuum decays fast enough that its own edge tail is the
/// honest truncation error.
pub fn vacuum_covariance(u: &FockOperator, params: AbcdParams, space: &FockSpace) -> CovarianceCheck {
    let psi = u.dot(&space.vacuum());
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi = psi.mapv(|z| z / C64::new(norm, 0.0));

    let quadratures = [
        space.quadrature(Mode::One, QuadratureKind::Position),
        space.quadrature(Mode::One, QuadratureKind::Momentum),
        space.quadrature(Mode::Two, QuadratureKind::Position),
        space.quadrature(Mode::Two, QuadratureKind::Momentum),
    ];
    let images: Vec<_> = quadratures.iter().map(|r| r.dot(&psi)).collect();
    let means: Vec<f64> = images.iter().map(|w| inner(&psi, w).re).collect();
    let mut covariance = [[0.0f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            // ⟨{R_i,R_j}/2⟩ = Re⟨R_iψ|R_jψ⟩ for Hermitian R.
            covariance[i][j] = inner(&images[i], &images[j]).re - means[i] * means[j];
        }
    }

    let s_inverse = target_symplectic(params).inverse().into_matrix();
    let predicted = s_inverse * 0.5 * s_inverse.transpose();
    let mut residual = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            residual = residual.max((covariance[i][j] - predicted[(i, j)]).abs());
        }
    }
    CovarianceCheck { covariance, residual }
}
