//! Dense truncated two-mode Fock-space engine.
//!
//! States live on the tensor basis `|n₁, n₂⟩` with `0 ≤ nⱼ ≤ n_max`,
//! flattened as `n₁·(n_max+1) + n₂` (see [`crate::conventions`]); operators
//! are dense complex matrices on that space. Truncation breaks the ladder
//! algebra only at the edge levels, so every quantitative statement is
//! evaluated after compression onto the interior subspace (both modes
//! `≤ n_max − margin`), where commutators, unitarity, and eigen-relations
//! hold to machine precision or to a truncation-limited residual.
//!
//! Every unitary here is a spectral exponential `exp(iθG)` of one of eight
//! parameter-free Hermitian quadratic generators `G`; each generator is
//! eigendecomposed at most once per [`FockSpace`] and reused for all
//! parameter values (the cache is written through [`std::sync::OnceLock`],
//! so sharing a space across threads is sound).

use std::array;
use std::sync::OnceLock;

use ndarray::linalg::kron;
use ndarray::{Array1, Array2, Axis};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::conventions;
use crate::params::{AbcdParams, SqueezeParam};
use crate::symplectic::{decompose, Form, GaussianFactor};
use crate::truncation::TruncationConfig;

/// Dense operator on the flattened two-mode space.
pub type FockOperator = Array2<C64>;
/// Dense state vector on the flattened two-mode space.
pub type FockState = Array1<C64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("generator is not Hermitian: ||H - H^dag||_max = {deviation:.3e}")]
    NotHermitian { deviation: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    /// `Q = (a + a†)/√2`.
    Position,
    /// `P = i(a† − a)/√2`.
    Momentum,
}

/// The eight parameter-free Hermitian generators underlying all factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BaseGenerator {
    /// `(P₁+P₂)²`
    FreePlus,
    /// `(P₁−P₂)²`
    FreeMinus,
    /// `Σⱼ (QⱼPⱼ + PⱼQⱼ)/2`
    Dilation,
    /// `Q₁P₂ + Q₂P₁`
    CrossScale,
    /// `(Q₁−Q₂)²`
    LensMinus,
    /// `(Q₁+Q₂)²`
    LensPlus,
    /// `(Q₁−Q₂)² + (P₁+P₂)²`
    SuPlus,
    /// `(Q₁+Q₂)² + (P₁−P₂)²`
    SuMinus,
}

const GENERATOR_COUNT: usize = 8;

struct Spectral {
    eigenvalues: Array1<f64>,
    eigenvectors: Array2<C64>,
}

/// Truncated two-mode Fock space with its ladder/quadrature matrices and the
/// spectral cache of the factor generators.
pub struct FockSpace {
    config: TruncationConfig,
    a1: FockOperator,
    a2: FockOperator,
    q1: FockOperator,
    p1: FockOperator,
    q2: FockOperator,
    p2: FockOperator,
    interior: Vec<usize>,
    spectral: [OnceLock<Spectral>; GENERATOR_COUNT],
}

impl FockSpace {
    pub fn new(config: TruncationConfig) -> Self {
        let per = config.per_mode();
        let mut a = Array2::<C64>::zeros((per, per));
        for n in 1..per {
            a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
        }
        let eye = Array2::<C64>::eye(per);
        let a1 = kron(&a, &eye);
        let a2 = kron(&eye, &a);
        let re_half = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let im_half = C64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        let q1 = (&adjoint(&a1) + &a1) * re_half;
        let p1 = (&adjoint(&a1) - &a1) * im_half;
        let q2 = (&adjoint(&a2) + &a2) * re_half;
        let p2 = (&adjoint(&a2) - &a2) * im_half;
        let k = config.interior_max();
        let mut interior = Vec::with_capacity((k + 1) * (k + 1));
        for n1 in 0..=k {
            for n2 in 0..=k {
                interior.push(n1 * per + n2);
            }
        }
        Self {
            config,
            a1,
            a2,
            q1,
            p1,
            q2,
            p2,
            interior,
            spectral: array::from_fn(|_| OnceLock::new()),
        }
    }

    pub fn config(&self) -> TruncationConfig {
        self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    /// Flattened index of `|n₁, n₂⟩`.
    pub fn basis_index(&self, n1: usize, n2: usize) -> usize {
        conventions::basis_index(n1, n2, self.config.n_max())
    }

    /// Mode occupations of a flattened index.
    pub fn basis_levels(&self, index: usize) -> (usize, usize) {
        conventions::basis_levels(index, self.config.n_max())
    }

    /// Annihilation operator of the chosen mode.
    pub fn ladder(&self, mode: Mode) -> &FockOperator {
        match mode {
            Mode::One => &self.a1,
            Mode::Two => &self.a2,
        }
    }

    pub fn quadrature(&self, mode: Mode, kind: QuadratureKind) -> &FockOperator {
        match (mode, kind) {
            (Mode::One, QuadratureKind::Position) => &self.q1,
            (Mode::One, QuadratureKind::Momentum) => &self.p1,
            (Mode::Two, QuadratureKind::Position) => &self.q2,
            (Mode::Two, QuadratureKind::Momentum) => &self.p2,
        }
    }

    pub fn identity(&self) -> FockOperator {
        Array2::eye(self.dim())
    }

    pub fn vacuum(&self) -> FockState {
        self.basis_state(0, 0)
    }

    pub fn basis_state(&self, n1: usize, n2: usize) -> FockState {
        let mut v = Array1::zeros(self.dim());
        v[self.basis_index(n1, n2)] = C64::new(1.0, 0.0);
        v
    }

    /// Flattened indices of the interior subspace, ascending.
    pub fn interior_indices(&self) -> &[usize] {
        &self.interior
    }

    pub fn interior_dim(&self) -> usize {
        self.interior.len()
    }

    /// `Π O Π` compressed to the interior block (rows and columns selected).
    pub fn compress_operator(&self, op: &FockOperator) -> FockOperator {
        op.select(Axis(0), &self.interior).select(Axis(1), &self.interior)
    }

    /// `Π |ψ⟩` compressed to the interior block.
    pub fn compress_state(&self, v: &FockState) -> FockState {
        self.interior.iter().map(|&i| v[i]).collect()
    }

    /// `‖Π(U†U − I)Π‖_max`.
    pub fn interior_unitarity_residual(&self, u: &FockOperator) -> f64 {
        let gram = self.compress_operator(&adjoint(u).dot(u));
        max_abs(&(gram - Array2::<C64>::eye(self.interior_dim())))
    }

    /// `exp(iH)` for Hermitian `H`, through the eigendecomposition
    /// `H = VΛV†` (unconditionally stable, exactly unitary up to round-off).
    pub fn hermitian_exp(&self, h: &FockOperator) -> Result<FockOperator, FockError> {
        let deviation = max_abs(&(h - &adjoint(h)));
        if deviation > self.config.tol() {
            return Err(FockError::NotHermitian { deviation });
        }
        let (eigenvalues, eigenvectors) = eigh_checked(h);
        Ok(spectral_unitary(&eigenvalues, &eigenvectors, 1.0))
    }

    /// The factor's unitary `exp(iθG)`, reconstructed from the cached
    /// eigendecomposition of its base generator `G`.
    pub fn realize_factor(&self, factor: GaussianFactor) -> FockOperator {
        let (kind, theta) = match factor {
            GaussianFactor::FreePropPlus(x) => (BaseGenerator::FreePlus, x),
            GaussianFactor::FreePropMinus(x) => (BaseGenerator::FreeMinus, x),
            GaussianFactor::CollectiveScale(s) => (BaseGenerator::Dilation, s),
            GaussianFactor::TwoModeScale(t) => (BaseGenerator::CrossScale, -t),
            GaussianFactor::ThinLensMinus(k) => (BaseGenerator::LensMinus, k),
            GaussianFactor::ThinLensPlus(k) => (BaseGenerator::LensPlus, k),
            GaussianFactor::Su11Plus(th) => (BaseGenerator::SuPlus, th),
            GaussianFactor::Su11Mid(s) => (BaseGenerator::CrossScale, s),
            GaussianFactor::Su11Minus(th) => (BaseGenerator::SuMinus, th),
        };
        let spectral = self.spectral(kind);
        spectral_unitary(&spectral.eigenvalues, &spectral.eigenvectors, theta)
    }

    /// Operator product of the factors in written order (leftmost outermost,
    /// i.e. applied last to states — matrix products do *not* reverse here,
    /// unlike the quadrature matrices of [`crate::symplectic::compose`]).
    pub fn realize_sequence(&self, factors: &[GaussianFactor]) -> FockOperator {
        let mut acc: Option<FockOperator> = None;
        for &factor in factors {
            let u = self.realize_factor(factor);
            acc = Some(match acc {
                Some(m) => m.dot(&u),
                None => u,
            });
        }
        acc.unwrap_or_else(|| self.identity())
    }

    /// The full squeezing operator, as the factor product of the chosen form.
    pub fn realize_gtso(&self, params: AbcdParams, form: Form) -> FockOperator {
        self.realize_sequence(decompose(params, form).factors())
    }

    /// The plain two-mode squeezer `exp[λ(a₁†a₂† − a₁a₂)]`, built directly
    /// from the ladder matrices (an independent construction that must agree
    /// with `realize_factor(TwoModeScale(λ))`).
    pub fn realize_s2(&self, sp: SqueezeParam) -> FockOperator {
        let pair_up = adjoint(&self.a1).dot(&adjoint(&self.a2));
        let pair_down = self.a1.dot(&self.a2);
        let h = (pair_up - pair_down) * C64::new(0.0, -sp.lambda);
        self.hermitian_exp(&h).expect("-i(a1^dag a2^dag - a1 a2) is Hermitian")
    }

    fn spectral(&self, kind: BaseGenerator) -> &Spectral {
        self.spectral[kind as usize].get_or_init(|| {
            let (eigenvalues, eigenvectors) = eigh_checked(&self.base_generator(kind));
            Spectral { eigenvalues, eigenvectors }
        })
    }

    fn base_generator(&self, kind: BaseGenerator) -> FockOperator {
        let square = |m: &FockOperator| m.dot(m);
        match kind {
            BaseGenerator::FreePlus => square(&(&self.p1 + &self.p2)),
            BaseGenerator::FreeMinus => square(&(&self.p1 - &self.p2)),
            BaseGenerator::Dilation => {
                (self.q1.dot(&self.p1)
                    + self.p1.dot(&self.q1)
                    + self.q2.dot(&self.p2)
                    + self.p2.dot(&self.q2))
                    * C64::new(0.5, 0.0)
            }
            BaseGenerator::CrossScale => self.q1.dot(&self.p2) + self.q2.dot(&self.p1),
            BaseGenerator::LensMinus => square(&(&self.q1 - &self.q2)),
            BaseGenerator::LensPlus => square(&(&self.q1 + &self.q2)),
            BaseGenerator::SuPlus => {
                square(&(&self.q1 - &self.q2)) + square(&(&self.p1 + &self.p2))
            }
            BaseGenerator::SuMinus => {
                square(&(&self.q1 + &self.q2)) + square(&(&self.p1 - &self.p2))
            }
        }
    }
}

/// Eigendecomposition `H = VΛV†` of a Hermitian operator, normalized to the
/// columns-of-`V`-are-eigenvectors convention and verified.
///
/// The LAPACK binding in use (ndarray-linalg 0.18) hands a row-major buffer
/// to LAPACK as if it were column-major, so for complex Hermitian input it
/// effectively diagonalizes `Hᵀ = H̄`; conjugating the returned vectors
/// recovers the eigenbasis of `H` (the eigenvalues agree). The input is
/// copied to a canonical row-major buffer first, because the binding's
/// behavior is layout-dependent. Each returned pair is then verified against
/// `Hv = λv`, so a change in the binding's convention panics here instead of
/// silently reversing every conjugation direction downstream.
fn eigh_checked(h: &FockOperator) -> (Array1<f64>, Array2<C64>) {
    let canonical = h.as_standard_layout().into_owned();
    let (eigenvalues, raw) = canonical
        .eigh(UPLO::Lower)
        .expect("Hermitian eigendecomposition");
    let eigenvectors = raw.mapv(|z| z.conj());
    let mut scaled = eigenvectors.to_owned();
    for (j, mut col) in scaled.columns_mut().into_iter().enumerate() {
        col *= C64::new(eigenvalues[j], 0.0);
    }
    let residual = max_abs(&(h.dot(&eigenvectors) - scaled));
    let scale = eigenvalues.iter().fold(1.0f64, |m, &v| m.max(v.abs()));
    assert!(
        residual <= 1e-9 * scale * h.nrows() as f64,
        "eigenpair residual {residual:.3e} exceeds round-off scale; \
         the eigensolver's layout convention has changed"
    );
    (eigenvalues, eigenvectors)
}

/// `V·diag(e^{iθλ})·V†` from an eigendecomposition.
fn spectral_unitary(
    eigenvalues: &Array1<f64>,
    eigenvectors: &Array2<C64>,
    theta: f64,
) -> FockOperator {
    let mut scaled = eigenvectors.to_owned();
    for (j, mut col) in scaled.columns_mut().into_iter().enumerate() {
        col *= C64::from_polar(1.0, theta * eigenvalues[j]);
    }
    scaled.dot(&adjoint(eigenvectors))
}

/// Conjugate transpose.
pub fn adjoint(m: &FockOperator) -> FockOperator {
    m.t().mapv(|z| z.conj())
}

/// `⟨x|y⟩`, conjugate-linear in the first argument.
pub fn inner(x: &FockState, y: &FockState) -> C64 {
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Euclidean norm of a state.
pub fn norm(v: &FockState) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry modulus of an operator or state.
pub fn max_abs<D: ndarray::Dimension>(m: &ndarray::Array<C64, D>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::FormChoice;

    fn space(n_max: usize, margin: usize) -> FockSpace {
        FockSpace::new(TruncationConfig::new(n_max, margin, 1e-8).unwrap())
    }

    fn commutator(a: &FockOperator, b: &FockOperator) -> FockOperator {
        a.dot(b) - b.dot(a)
    }

    #[test]
    fn ladder_matrix_elements() {
        let fs = space(6, 2);
        let a1 = fs.ladder(Mode::One);
        let a2 = fs.ladder(Mode::Two);
        assert_eq!(max_abs(&a1.dot(&fs.vacuum())), 0.0);
        assert_eq!(max_abs(&a2.dot(&fs.vacuum())), 0.0);
        let amp = inner(&fs.basis_state(1, 0), &a1.dot(&fs.basis_state(2, 0)));
        assert!((amp - C64::new(2.0f64.sqrt(), 0.0)).norm() < 1e-15);
        let amp = inner(&fs.basis_state(0, 1), &a2.dot(&fs.basis_state(0, 2)));
        assert!((amp - C64::new(2.0f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn interior_ladder_commutator_is_identity() {
        let fs = space(6, 2);
        for mode in [Mode::One, Mode::Two] {
            let a = fs.ladder(mode);
            let c = fs.compress_operator(&commutator(a, &adjoint(a)));
            let dev = max_abs(&(c - Array2::<C64>::eye(fs.interior_dim())));
            assert!(dev <= 1e-12, "mode {mode:?}: {dev:.3e}");
        }
    }

    #[test]
    fn quadrature_canonical_relations() {
        let fs = space(6, 2);
        let q1 = fs.quadrature(Mode::One, QuadratureKind::Position);
        let p1 = fs.quadrature(Mode::One, QuadratureKind::Momentum);
        let p2 = fs.quadrature(Mode::Two, QuadratureKind::Momentum);
        // Hermiticity and vacuum moments.
        assert!(max_abs(&(q1 - &adjoint(q1))) <= 1e-15);
        assert!(max_abs(&(p1 - &adjoint(p1))) <= 1e-15);
        let vac = fs.vacuum();
        assert!(inner(&vac, &q1.dot(&vac)).norm() <= 1e-15);
        let q_sq = inner(&vac, &q1.dot(&q1.dot(&vac)));
        assert!((q_sq - C64::new(0.5, 0.0)).norm() <= 1e-15);
        // Interior [Q₁, P₁] = i, [Q₁, P₂] = 0.
        let c = fs.compress_operator(&commutator(q1, p1));
        let eye = Array2::<C64>::eye(fs.interior_dim());
        assert!(max_abs(&(c - eye * C64::new(0.0, 1.0))) <= 1e-12);
        let c = fs.compress_operator(&commutator(q1, p2));
        assert!(max_abs(&c) <= 1e-12);
    }

    #[test]
    fn hermitian_exp_of_zero_is_identity() {
        let fs = space(4, 2);
        let u = fs.hermitian_exp(&Array2::zeros((fs.dim(), fs.dim()))).unwrap();
        assert!(max_abs(&(u - fs.identity())) <= 1e-13);
    }

    #[test]
    fn hermitian_exp_number_operator_phases() {
        let fs = space(5, 2);
        let n1 = adjoint(fs.ladder(Mode::One)).dot(fs.ladder(Mode::One));
        let u = fs.hermitian_exp(&(n1 * C64::new(std::f64::consts::PI, 0.0))).unwrap();
        // exp(iπ n₁) is diagonal with entries (−1)^{n₁}, exactly representable.
        for index in 0..fs.dim() {
            let (n1, _) = fs.basis_levels(index);
            let expected = C64::new(if n1 % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
            assert!((u[(index, index)] - expected).norm() <= 1e-12);
        }
    }

    #[test]
    fn hermitian_exp_rejects_ladder() {
        let fs = space(4, 2);
        match fs.hermitian_exp(fs.ladder(Mode::One)) {
            Err(FockError::NotHermitian { deviation }) => assert!(deviation > 1.0),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn zero_parameter_factors_are_identity() {
        let fs = space(5, 2);
        for factor in [
            GaussianFactor::FreePropPlus(0.0),
            GaussianFactor::FreePropMinus(0.0),
            GaussianFactor::CollectiveScale(0.0),
            GaussianFactor::TwoModeScale(0.0),
            GaussianFactor::ThinLensMinus(0.0),
            GaussianFactor::ThinLensPlus(0.0),
            GaussianFactor::Su11Plus(0.0),
            GaussianFactor::Su11Mid(0.0),
            GaussianFactor::Su11Minus(0.0),
        ] {
            let u = fs.realize_factor(factor);
            let dev = max_abs(&(u - fs.identity()));
            assert!(dev <= 1e-12, "{}: {dev:.3e}", factor.name());
        }
        for form in FormChoice::Both.forms() {
            let u = fs.realize_gtso(AbcdParams::identity(), *form);
            assert!(max_abs(&(u - fs.identity())) <= 1e-12);
        }
    }

    #[test]
    fn two_mode_scale_stretches_collective_position() {
        // U (Q₁+Q₂) U† = μ (Q₁+Q₂) on the interior for the squeezer at
        // t = ln(1/μ).  The conjugated operator needs headroom above the
        // interior: the deviation decays like a power of tanh|t| per margin
        // level, so a stretch of e^{0.2} needs margin ≈ 8 at n_max = 16 to
        // sit comfortably below 5e-4 (measured 4e-5 at this configuration).
        let fs = space(16, 8);
        let mu = 0.2f64.exp();
        let u = fs.realize_factor(GaussianFactor::TwoModeScale((1.0 / mu).ln()));
        let x = fs.quadrature(Mode::One, QuadratureKind::Position)
            + fs.quadrature(Mode::Two, QuadratureKind::Position);
        let lhs = fs.compress_operator(&u.dot(&x).dot(&adjoint(&u)));
        let rhs = fs.compress_operator(&x) * C64::new(mu, 0.0);
        let dev = max_abs(&(lhs - rhs));
        assert!(dev <= 5e-4, "deviation {dev:.3e}");
    }

    #[test]
    fn collective_scale_stretches_single_position() {
        // Dilation stretches both modes at once, so it needs more headroom
        // than the two-mode squeezer above (measured 2.4e-3 at margin 8 for
        // this stretch; comfortably under 1e-3 at margin 10).
        let fs = space(16, 10);
        let s = 0.2f64;
        let u = fs.realize_factor(GaussianFactor::CollectiveScale(s));
        let q1 = fs.quadrature(Mode::One, QuadratureKind::Position);
        let lhs = fs.compress_operator(&u.dot(q1).dot(&adjoint(&u)));
        let rhs = fs.compress_operator(q1) * C64::new(s.exp(), 0.0);
        let dev = max_abs(&(lhs - rhs));
        assert!(dev <= 1e-3, "deviation {dev:.3e}");
    }

    #[test]
    fn commuting_generators_compose_additively() {
        // The two lens generators are polynomials in positions only, hence
        // commute exactly; their exponentials must multiply like a single
        // exponential of the summed generator.
        let fs = space(8, 2);
        let q_minus = fs.quadrature(Mode::One, QuadratureKind::Position)
            - fs.quadrature(Mode::Two, QuadratureKind::Position);
        let q_plus = fs.quadrature(Mode::One, QuadratureKind::Position)
            + fs.quadrature(Mode::Two, QuadratureKind::Position);
        let h1 = q_minus.dot(&q_minus) * C64::new(0.17, 0.0);
        let h2 = q_plus.dot(&q_plus) * C64::new(-0.09, 0.0);
        let product = fs.hermitian_exp(&h1).unwrap().dot(&fs.hermitian_exp(&h2).unwrap());
        let joint = fs.hermitian_exp(&(h1 + h2)).unwrap();
        assert!(max_abs(&(product - joint)) <= 1e-10);
        // Same statement through the factor API.
        let via_factors = fs
            .realize_factor(GaussianFactor::ThinLensMinus(0.17))
            .dot(&fs.realize_factor(GaussianFactor::ThinLensPlus(-0.09)));
        let swapped = fs
            .realize_factor(GaussianFactor::ThinLensPlus(-0.09))
            .dot(&fs.realize_factor(GaussianFactor::ThinLensMinus(0.17)));
        assert!(max_abs(&(via_factors - swapped)) <= 1e-10);
    }

    #[test]
    fn realized_operators_are_interior_unitary() {
        let fs = space(12, 4);
        let params = AbcdParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
        for form in FormChoice::Both.forms() {
            let u = fs.realize_gtso(params, *form);
            let r = fs.interior_unitarity_residual(&u);
            assert!(r <= fs.config().tol(), "{form}: {r:.3e}");
        }
    }

    #[test]
    fn squeezer_vacuum_amplitude_matches_schmidt_normalization() {
        let fs = space(12, 4);
        let lambda = 0.2f64;
        let u = fs.realize_s2(SqueezeParam::from_lambda(lambda).unwrap());
        let vac = fs.vacuum();
        let amp = inner(&vac, &u.dot(&vac));
        let expected = 1.0 / lambda.cosh();
        assert!((amp - C64::new(expected, 0.0)).norm() <= 1e-8);
    }

    #[test]
    fn squeezer_constructions_agree() {
        // Ladder-built exp[λ(a₁†a₂† − a₁a₂)] versus the quadrature-built
        // factor exp(−iλ(Q₁P₂+Q₂P₁)): independent constructions of the same
        // unitary.
        let fs = space(10, 3);
        let lambda = 0.3f64;
        let via_ladders = fs.realize_s2(SqueezeParam::from_lambda(lambda).unwrap());
        let via_factor = fs.realize_factor(GaussianFactor::TwoModeScale(lambda));
        assert!(max_abs(&(via_ladders - via_factor)) <= 1e-10);
    }

    #[test]
    fn compression_selects_interior_block() {
        let fs = space(6, 2);
        assert_eq!(fs.interior_dim(), 25);
        let op = fs.compress_operator(&fs.identity());
        assert_eq!(op.shape(), &[25, 25]);
        assert!(max_abs(&(op - Array2::<C64>::eye(25))) == 0.0);
        let psi = fs.basis_state(1, 2);
        let compressed = fs.compress_state(&psi);
        // Interior flattening is row-major over (n₁, n₂) with width 5.
        assert_eq!(compressed.len(), 25);
        assert!((compressed[1 * 5 + 2] - C64::new(1.0, 0.0)).norm() == 0.0);
    }
}
