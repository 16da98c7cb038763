//! Entangled two-mode basis states and their transformation checks.
//!
//! Three families of (non-normalizable) entangled states are built here in
//! the truncated basis:
//!
//! - `|η⟩` — the Einstein–Podolsky–Rosen pair: common eigenvector of the
//!   relative position `Q₁−Q₂` and the total momentum `P₁+P₂`, with
//!   eigenvalues `√2·η₁` and `√2·η₂` for `η = η₁ + iη₂`.
//! - `|ξ⟩` — the conjugate family: common eigenvector of `Q₁+Q₂` and
//!   `P₁−P₂`, with eigenvalues `√2·ξ₁` and `√2·ξ₂`.
//! - `|η⟩_{D,B}` — a two-parameter deformation of `|η⟩` that is the common
//!   eigenvector of `D(Q₁−Q₂) − B(P₁−P₂)` and `B(Q₁+Q₂) + D(P₁+P₂)`; it is
//!   exactly the image of `|η⟩` under the two-mode transform with parameters
//!   `(A, B, C, D)`.
//!
//! Each state is `pre · exp(α a₁† + β a₂† + γ a₁†a₂†)|00⟩` for
//! family-specific scalars. On the truncated space the exponent is nilpotent
//! — every term only raises occupation — so the exponential series
//! terminates after at most `2·n_max + 1` applications and the construction
//! is *exact*: creation paths into a retained level never leave the retained
//! set, hence every retained amplitude equals its infinite-space value. The
//! interior-projected eigen-equation residuals are therefore at machine
//! precision; they are kept as cheap certificates of the conventions.
//!
//! Because the states are non-normalizable, all fidelity-style comparisons
//! compress to the interior block first and compare directions. Overlaps of
//! the `|ξ⟩` and `|η⟩` families pose one extra problem: the pair-sector
//! series alternates in sign, so a raw truncated inner product oscillates
//! with `n_max`. [`overlap_residual`] and [`kernel_residual`] stabilize it
//! by averaging the partial sums at `n_max` and `n_max − 1`.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::fock::{adjoint, inner, max_abs, norm, FockOperator, FockSpace, FockState, Mode, QuadratureKind};
use crate::params::{AbcdParams, SqueezeParam};
use crate::symplectic::{Form, GaussianFactor};
use crate::thresholds;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EprError {
    #[error("state has zero norm after interior projection")]
    ZeroState,
    #[error("dilation scale must be positive and finite, got {scale}")]
    NonPositiveScale { scale: f64 },
}

/// Label of the pair state `|η⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaLabel {
    pub eta: C64,
}

impl EtaLabel {
    pub fn new(eta: C64) -> Self {
        Self { eta }
    }

    /// Whether the label magnitude exceeds the documented accuracy envelope
    /// ([`thresholds::LABEL_ENVELOPE`]) at the default truncation.
    pub fn exceeds_envelope(&self) -> bool {
        self.eta.norm() > thresholds::LABEL_ENVELOPE
    }
}

/// Label of the conjugate pair state `|ξ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiLabel {
    pub xi: C64,
}

impl XiLabel {
    pub fn new(xi: C64) -> Self {
        Self { xi }
    }

    pub fn exceeds_envelope(&self) -> bool {
        self.xi.norm() > thresholds::LABEL_ENVELOPE
    }
}

/// Label of the deformed pair state `|η⟩_{D,B}`; the deformation is set by
/// the `B` and `D` entries of the transform parameters (with `A`, `C`
/// entering only the scalar prefactor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaDbLabel {
    pub eta: C64,
    pub params: AbcdParams,
}

impl EtaDbLabel {
    pub fn new(eta: C64, params: AbcdParams) -> Self {
        Self { eta, params }
    }

    pub fn exceeds_envelope(&self) -> bool {
        self.eta.norm() > thresholds::LABEL_ENVELOPE
    }
}

/// Which common-eigenvector pair of quadrature combinations to test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigenPair {
    /// `Q₁−Q₂` and `P₁+P₂` (the `|η⟩` family).
    Eta,
    /// `Q₁+Q₂` and `P₁−P₂` (the `|ξ⟩` family).
    Xi,
    /// `D(Q₁−Q₂) − B(P₁−P₂)` and `B(Q₁+Q₂) + D(P₁+P₂)` (the `|η⟩_{D,B}`
    /// family); carries the parameters that define the combinations.
    Db(AbcdParams),
}

/// Relative interior residuals of the two eigen-equations of a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResiduals {
    /// Residual of the position-like combination (eigenvalue `√2·e₁`).
    pub first: f64,
    /// Residual of the momentum-like combination (eigenvalue `√2·e₂`).
    pub second: f64,
}

impl EigenResiduals {
    pub fn max(&self) -> f64 {
        self.first.max(self.second)
    }
}

/// Fidelity comparison of a transformed state against a closed-form target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityCheck {
    /// `1 − |⟨target|image⟩| / (‖target‖·‖image‖)` on the interior block.
    pub deficit: f64,
    /// Absolute phase (radians) of `image/target` on the target's dominant
    /// interior component; zero when the transform reproduces the target
    /// including its scalar prefactor.
    pub phase_deviation: f64,
}

/// Fidelity plus amplitude-ratio comparison for the label-rescaling laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingCheck {
    /// `1 − |⟨target|image⟩| / (‖target‖·‖image‖)` on the interior block.
    pub deficit: f64,
    /// `|image/target − r|` on the target's dominant interior component,
    /// where `r` is the predicted scalar prefactor.
    pub ratio_deviation: f64,
}

/// `pre · exp(α a₁† + β a₂† + γ a₁†a₂†)|00⟩`, evaluated by running the
/// exponential series until the nilpotent exponent annihilates the term.
fn creation_series(space: &FockSpace, alpha: C64, beta: C64, gamma: C64, prefactor: C64) -> FockState {
    let ad1 = adjoint(space.ladder(Mode::One));
    let ad2 = adjoint(space.ladder(Mode::Two));
    let pair = ad1.dot(&ad2);
    let exponent: FockOperator =
        ad1.mapv(|x| x * alpha) + ad2.mapv(|x| x * beta) + pair.mapv(|x| x * gamma);
    let mut term = space.vacuum();
    let mut acc = term.clone();
    // Each application raises total occupation by at least one, so the term
    // vanishes identically after at most 2·n_max + 1 steps.
    for k in 1..=(2 * space.config().n_max() + 2) {
        term = exponent.dot(&term).mapv(|x| x / k as f64);
        if norm(&term) == 0.0 {
            break;
        }
        acc += &term;
    }
    acc.mapv(|x| x * prefactor)
}

/// The pair state `e^{−|η|²/2} exp(η a₁† − η* a₂† + a₁†a₂†)|00⟩`.
///
/// At `η = 0` this is the unnormalized pair ladder `Σₙ |n,n⟩`.
pub fn eta_state(label: EtaLabel, space: &FockSpace) -> FockState {
    let eta = label.eta;
    let pre = C64::new((-0.5 * eta.norm_sqr()).exp(), 0.0);
    creation_series(space, eta, -eta.conj(), C64::new(1.0, 0.0), pre)
}

/// The conjugate pair state `e^{−|ξ|²/2} exp(ξ a₁† + ξ* a₂† − a₁†a₂†)|00⟩`.
///
/// At `ξ = 0` this is the alternating pair ladder `Σₙ (−1)ⁿ|n,n⟩`.
pub fn xi_state(label: XiLabel, space: &FockSpace) -> FockState {
    let xi = label.xi;
    let pre = C64::new((-0.5 * xi.norm_sqr()).exp(), 0.0);
    creation_series(space, xi, xi.conj(), C64::new(-1.0, 0.0), pre)
}

/// The deformed pair state
/// `(D+iB)⁻¹ · exp[−(A−iC)|η|²/(2(D+iB))] ·
///  exp(η a₁†/(D+iB) − η* a₂†/(D+iB) + ((D−iB)/(D+iB)) a₁†a₂†)|00⟩`.
///
/// With identity parameters it reduces entrywise to [`eta_state`]; at
/// `η = 0` the pair-ladder amplitudes form a geometric series with ratio
/// `(D−iB)/(D+iB)`.
pub fn eta_db_state(label: EtaDbLabel, space: &FockSpace) -> FockState {
    let eta = label.eta;
    let denom = C64::new(label.params.d, label.params.b);
    let alpha = eta / denom;
    let beta = -eta.conj() / denom;
    let gamma = C64::new(label.params.d, -label.params.b) / denom;
    let pre = (C64::new(label.params.a, -label.params.c) * (-0.5 * eta.norm_sqr()) / denom).exp()
        / denom;
    creation_series(space, alpha, beta, gamma, pre)
}

/// The two quadrature combinations whose common eigenvector the chosen
/// family is.
fn pair_operators(pair: EigenPair, space: &FockSpace) -> [FockOperator; 2] {
    let q1 = space.quadrature(Mode::One, QuadratureKind::Position);
    let p1 = space.quadrature(Mode::One, QuadratureKind::Momentum);
    let q2 = space.quadrature(Mode::Two, QuadratureKind::Position);
    let p2 = space.quadrature(Mode::Two, QuadratureKind::Momentum);
    match pair {
        EigenPair::Eta => [q1 - q2, p1 + p2],
        EigenPair::Xi => [q1 + q2, p1 - p2],
        EigenPair::Db(params) => {
            let (b, d) = (params.b, params.d);
            [
                (q1 - q2).mapv(|x| x * d) - (p1 - p2).mapv(|x| x * b),
                (q1 + q2).mapv(|x| x * b) + (p1 + p2).mapv(|x| x * d),
            ]
        }
    }
}

/// Relative interior residuals `‖Π(O − √2·e)|ψ⟩‖ / ‖Π|ψ⟩‖` for the two
/// operators `O` of the chosen pair with eigenvalue components
/// `eigenvalues = (e₁, e₂)`.
///
/// The `√2` converts a complex label component into a quadrature eigenvalue
/// under the convention `Q = (a + a†)/√2`.
pub fn eigen_residuals(
    state: &FockState,
    pair: EigenPair,
    eigenvalues: (f64, f64),
    space: &FockSpace,
) -> Result<EigenResiduals, EprError> {
    let projected_norm = norm(&space.compress_state(state));
    if projected_norm == 0.0 {
        return Err(EprError::ZeroState);
    }
    let [op1, op2] = pair_operators(pair, space);
    let relative = |op: &FockOperator, e: f64| -> f64 {
        let scale = std::f64::consts::SQRT_2 * e;
        let image = op.dot(state) - state.mapv(|x| x * scale);
        norm(&space.compress_state(&image)) / projected_norm
    };
    Ok(EigenResiduals {
        first: relative(&op1, eigenvalues.0),
        second: relative(&op2, eigenvalues.1),
    })
}

/// Inner product stabilized against the non-decaying pair-sector tail.
///
/// Let `S_N` and `S_{N−1}` be the partial sums of `⟨x|y⟩` retaining levels
/// up to `n_max` and `n_max − 1`. The pair-ladder contributions form an
/// approximately geometric sequence with unit-modulus ratio `ρ` (the product
/// of the conjugated bra and ket pair ratios), so the two partial sums are
/// combined with the tail-cancelling weights
/// `(S_N − ρ·S_{N−1}) / (1 − ρ)`.
/// For the plain `⟨ξ|η⟩` overlap `ρ = −1` and this is the ordinary average
/// `(S_N + S_{N−1})/2`.
fn tail_averaged_inner(x: &FockState, y: &FockState, ratio: C64, space: &FockSpace) -> C64 {
    let full = inner(x, y);
    let n_max = space.config().n_max();
    let mut edge = C64::new(0.0, 0.0);
    for i in 0..space.dim() {
        let (n1, n2) = space.basis_levels(i);
        if n1 == n_max || n2 == n_max {
            edge += x[i].conj() * y[i];
        }
    }
    (full - ratio * (full - edge)) / (C64::new(1.0, 0.0) - ratio)
}

/// `|⟨ξ|η⟩ − ½e^{(ηξ*−ξη*)/2}|` with the tail-averaged truncated overlap.
///
/// At `η = ξ = 0` the alternating pair ladder gives exactly `½`.
pub fn overlap_residual(xi: XiLabel, eta: EtaLabel, space: &FockSpace) -> f64 {
    let bra = xi_state(xi, space);
    let ket = eta_state(eta, space);
    // Pair ratios: conj(−1) from the bra family, +1 from the ket family.
    let measured = tail_averaged_inner(&bra, &ket, C64::new(-1.0, 0.0), space);
    let exponent = (eta.eta * xi.xi.conj() - xi.xi * eta.eta.conj()) * 0.5;
    let target = exponent.exp() * 0.5;
    (measured - target).norm()
}

/// `|⟨ξ|η⟩_{D,B} − 𝔠(η)·exp[(i/D)(ξ₁η₂ − ξ₂η₁ − B|ξ|²/2)]|` with
/// `𝔠(η) = (2D)⁻¹·exp[iC|η|²/(2D)]`, tail-averaged as in
/// [`overlap_residual`]. With identity parameters the target reduces to the
/// plain overlap form.
pub fn kernel_residual(xi: XiLabel, label: EtaDbLabel, space: &FockSpace) -> f64 {
    let bra = xi_state(xi, space);
    let ket = eta_db_state(label, space);
    // Pair ratios: conj(−1) from the bra family, (D−iB)/(D+iB) from the ket.
    let ratio = -C64::new(label.params.d, -label.params.b) / C64::new(label.params.d, label.params.b);
    let measured = tail_averaged_inner(&bra, &ket, ratio, space);
    let (b, c, d) = (label.params.b, label.params.c, label.params.d);
    let (eta1, eta2) = (label.eta.re, label.eta.im);
    let (xi1, xi2) = (xi.xi.re, xi.xi.im);
    let constant = C64::new(0.0, c * label.eta.norm_sqr() / (2.0 * d)).exp() / (2.0 * d);
    let phase = C64::new(0.0, (xi1 * eta2 - xi2 * eta1 - 0.5 * b * xi.xi.norm_sqr()) / d);
    let target = constant * phase.exp();
    (measured - target).norm()
}

/// Interior deficit and dominant-component phase between the realized
/// transform applied to `|η⟩` and the closed-form image `|η⟩_{D,B}`.
///
/// The transform maps the pair family onto the deformed family including
/// the scalar prefactor, so both the deficit and the phase vanish up to
/// truncation error.
pub fn f2_action_fidelity(
    eta: EtaLabel,
    params: AbcdParams,
    space: &FockSpace,
) -> Result<FidelityCheck, EprError> {
    let u = space.realize_gtso(params, Form::OpticalSixFactor);
    let image = space.compress_state(&u.dot(&eta_state(eta, space)));
    let target = space.compress_state(&eta_db_state(EtaDbLabel::new(eta.eta, params), space));
    let (deficit, ratio) = direction_and_ratio(&image, &target)?;
    Ok(FidelityCheck {
        deficit,
        phase_deviation: ratio.arg().abs(),
    })
}

/// Interior deficit and amplitude-ratio deviation for the squeezer's
/// label-rescaling law `S₂|η⟩ = μ⁻¹|η/μ⟩`.
pub fn s2_scaling_fidelity(
    sp: SqueezeParam,
    eta: EtaLabel,
    space: &FockSpace,
) -> Result<ScalingCheck, EprError> {
    let u = space.realize_s2(sp);
    let image = space.compress_state(&u.dot(&eta_state(eta, space)));
    let target = space.compress_state(&eta_state(EtaLabel::new(eta.eta / sp.mu), space));
    let (deficit, ratio) = direction_and_ratio(&image, &target)?;
    Ok(ScalingCheck {
        deficit,
        ratio_deviation: (ratio - 1.0 / sp.mu).norm(),
    })
}

/// Interior deficit and amplitude-ratio deviation for the dilation law of
/// the middle hyperbolic factor, `U|ξ⟩ = a⁻¹|ξ/a⟩` with
/// `U = exp[iτ(Q₁P₂+Q₂P₁)]` at `τ = ln a`.
pub fn dilation_fidelity(
    a_scale: f64,
    xi: XiLabel,
    space: &FockSpace,
) -> Result<ScalingCheck, EprError> {
    if !(a_scale.is_finite() && a_scale > 0.0) {
        return Err(EprError::NonPositiveScale { scale: a_scale });
    }
    let u = space.realize_factor(GaussianFactor::Su11Mid(a_scale.ln()));
    let image = space.compress_state(&u.dot(&xi_state(xi, space)));
    let target = space.compress_state(&xi_state(XiLabel::new(xi.xi / a_scale), space));
    let (deficit, ratio) = direction_and_ratio(&image, &target)?;
    Ok(ScalingCheck {
        deficit,
        ratio_deviation: (ratio - 1.0 / a_scale).norm(),
    })
}

/// Normalized-overlap deficit of `image` against `target`, plus the complex
/// amplitude ratio `image/target` on the target's dominant component.
///
/// "Dominant" is the first component within a relative `1e−12` band of the
/// largest magnitude; the band makes the choice immune to round-off jitter
/// among analytically tied amplitudes (the flat pair ladder at zero label),
/// which would otherwise select an arbitrary interior-edge component.
fn direction_and_ratio(image: &FockState, target: &FockState) -> Result<(f64, C64), EprError> {
    let image_norm = norm(image);
    let target_norm = norm(target);
    if image_norm == 0.0 || target_norm == 0.0 {
        return Err(EprError::ZeroState);
    }
    let deficit = (1.0 - inner(target, image).norm() / (image_norm * target_norm)).max(0.0);
    let best = target.iter().fold(0.0f64, |acc, x| acc.max(x.norm()));
    let dominant = target
        .iter()
        .position(|x| x.norm() >= best * (1.0 - 1e-12))
        .expect("a nonzero state has a dominant component");
    Ok((deficit, image[dominant] / target[dominant]))
}

/// Max-norm of the interior-compressed commutator of the two deformed-pair
/// combinations; they commute for any parameters, which is what makes a
/// common eigenvector possible.
pub fn db_pair_commutator_residual(params: AbcdParams, space: &FockSpace) -> f64 {
    let [op1, op2] = pair_operators(EigenPair::Db(params), space);
    let commutator = op1.dot(&op2) - op2.dot(&op1);
    max_abs(&space.compress_operator(&commutator))
}
