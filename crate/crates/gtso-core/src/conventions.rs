//! Ordering and sign conventions shared by both layers.
//!
//! Quadratures are dimensionless, ħ = 1:
//!
//! ```text
//! Q = (a + a†)/√2,   P = i(a† − a)/√2,   [Q, P] = i.
//! ```
//!
//! The phase-space vector is ordered `R = (q₁, p₁, q₂, p₂)`. Collective
//! quadratures are the orthogonal combination
//!
//! ```text
//! u = (q₊, p₊, q₋, p₋),   q± = (q₁ ± q₂)/√2,   p± = (p₁ ± p₂)/√2,
//! ```
//!
//! so `u = T·R` with the orthogonal matrix `T` returned by
//! [`collective_from_single`]. Every operator treated here acts block-
//! diagonally on the (q₊,p₊) and (q₋,p₋) planes.
//!
//! # Symplectic image of a unitary
//!
//! For a Gaussian unitary `U`, its symplectic image `S` is defined by
//!
//! ```text
//! U Rᵢ U⁻¹ = Σⱼ Sᵢⱼ Rⱼ.
//! ```
//!
//! Two consequences fixed once here and relied on everywhere:
//!
//! * **products reverse**: `S_{UV} = S_V · S_U`. A factor sequence is listed
//!   in operator-product order (leftmost factor is applied *last* to a ket),
//!   so composing a sequence multiplies the factor matrices right-to-left.
//! * **state covariance uses the inverse**: expectation values of `U|00⟩`
//!   involve `U†RᵢU = (S⁻¹R)ᵢ`, so the covariance of `U|00⟩` is
//!   `σ = S⁻¹ · (I/2) · S⁻ᵀ`.
//!
//! # Fock basis
//!
//! The two-mode Fock basis `|n₁,n₂⟩` with per-mode cutoff `n_max` is
//! flattened as `index = n₁·(n_max+1) + n₂` (mode 1 major).

use nalgebra::Matrix4;

/// Symplectic form `J` in the `(q₁,p₁,q₂,p₂)` ordering: `J[q,p] = +1` within
/// each mode, zero across modes.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::from_row_slice(&[
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    ])
}

/// Orthogonal change of basis `T` with `u = T·R`: rows are q₊, p₊, q₋, p₋
/// expressed in `(q₁,p₁,q₂,p₂)` components. `T·Tᵀ = I`.
pub fn collective_from_single() -> Matrix4<f64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Matrix4::from_row_slice(&[
        s, 0.0, s, 0.0, //
        0.0, s, 0.0, s, //
        s, 0.0, -s, 0.0, //
        0.0, s, 0.0, -s,
    ])
}

/// Unnormalized collective change of basis `U = √2·T` with integer entries.
/// `UᵀU = 2I` exactly, so conjugating by `T` as `½·Uᵀ(·)U` keeps block
/// assemblies free of `1/√2` rounding.
pub fn collective_from_single_unnormalized() -> Matrix4<f64> {
    Matrix4::from_row_slice(&[
        1.0, 0.0, 1.0, 0.0, //
        0.0, 1.0, 0.0, 1.0, //
        1.0, 0.0, -1.0, 0.0, //
        0.0, 1.0, 0.0, -1.0,
    ])
}

/// Flattened index of `|n₁,n₂⟩` for per-mode cutoff `n_max`.
pub fn basis_index(n1: usize, n2: usize, n_max: usize) -> usize {
    debug_assert!(n1 <= n_max && n2 <= n_max);
    n1 * (n_max + 1) + n2
}

/// Inverse of [`basis_index`].
pub fn basis_levels(index: usize, n_max: usize) -> (usize, usize) {
    (index / (n_max + 1), index % (n_max + 1))
}
