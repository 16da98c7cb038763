//! Documented pass/fail thresholds for every verification residual.
//!
//! Two regimes apply. Exact-layer identities (4×4 matrix algebra) are limited
//! only by double-precision round-off of short well-conditioned products, so
//! they sit at 1e−10 or tighter. Fock-layer residuals are limited by
//! truncation; their thresholds were frozen from convergence sweeps over
//! `n_max` (see the `sweep` command) with an order-of-magnitude safety
//! factor, not tuned to any particular run.

/// Max-norm gap between a composed factorization and the target matrix.
/// Round-off of ≤ 6 well-conditioned 4×4 products.
pub const FACTORIZATION: f64 = 1e-10;

/// Max-norm of `S·J·Sᵀ − J` for exact-layer matrices.
pub const SYMPLECTIC_GROUP: f64 = 1e-12;

/// Max-norm gap between the numerically computed 2×2 matrix logarithm of the
/// scaling core and its closed form.
pub const SCALING_LOG: f64 = 1e-12;

/// Interior-projected, spectral-norm-relative Heisenberg residuals (the four
/// collective quadrature lines) at `n_max = 16`, `margin = 6`.
pub const HEISENBERG: f64 = 1e-6;

/// Interior commutator residuals of the three su(1,1) relations. The
/// relations are polynomial identities, exact on the interior at any size.
pub const SU11: f64 = 1e-10;

/// Phase-aligned interior deviation between the two middle-operator forms at
/// `n_max = 16`, `margin = 6`.
pub const FORM_EQUIVALENCE: f64 = 1e-7;

/// Heisenberg residuals of the plain two-mode squeezer at `λ = 0.3`.
pub const S2_SCALING: f64 = 1e-6;

/// Deviation of squeezed-vacuum amplitudes from the geometric Schmidt form
/// `tanhⁿλ / cosh λ` at `n_max = 22`.
pub const SCHMIDT: f64 = 1e-8;

/// Fidelity deficit between the realized squeezing operator applied to an
/// EPR-type state and the closed-form image state, at `n_max = 20`,
/// `margin = 8`.
pub const F2_ACTION_DEFICIT: f64 = 1e-4;

/// Phase deviation (radians) on the dominant interior component for the same
/// comparison.
pub const F2_ACTION_PHASE: f64 = 1e-3;

/// Truncated overlap against its closed form (labels of modulus ≤ 0.8,
/// `n_max = 22`, two-point tail averaging).
pub const OVERLAP: f64 = 2e-3;

/// Truncated transformed-representation kernel against its closed form,
/// same regime as [`OVERLAP`].
pub const KERNEL: f64 = 2e-3;

/// Fidelity deficit for the dilation property of the middle su(1,1) factor
/// at `a_scale = e^{0.3}`, `n_max = 22`.
pub const DILATION_DEFICIT: f64 = 1e-4;

/// Max-norm gap between the measured vacuum-image covariance and the
/// symplectic-layer prediction at `n_max = 20`.
pub const COVARIANCE: f64 = 1e-6;

/// Eigen-relation residuals of the non-normalizable representation states.
/// The interior amplitudes are exact, so observed values are near machine
/// precision; the loose bound guards the normalization denominator.
pub const EIGEN_RELATION: f64 = 1e-2;

/// Interior unitarity of every realized operator, `‖Π(U†U−I)Π‖_max`.
pub const INTERIOR_UNITARITY: f64 = 1e-8;

/// Convergence sweeps must not grow by more than this factor between
/// consecutive `n_max` rows (truncation-limited residuals only).
pub const SWEEP_GROWTH_FACTOR: f64 = 2.0;

/// Floor applied before sweep ratio comparisons so that residuals at machine
/// precision do not produce spurious ratio violations.
pub const RESIDUAL_FLOOR: f64 = 1e-13;

/// Largest state label magnitude that keeps the dominant Fock weight of a
/// representation state safely inside the default truncation; larger labels
/// trigger a diagnostic warning rather than an error.
pub const LABEL_ENVELOPE: f64 = 1.5;

/// Amplitude-ratio deviation for the label-rescaling laws: the dominant
/// component of a rescaled state must match the predicted prefactor to this
/// relative accuracy.
pub const SCALING_RATIO: f64 = 1e-3;
