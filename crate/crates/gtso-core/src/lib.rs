//! Verification-grade implementation of the generalized two-mode squeezing
//! operator (GTSO) and its Gaussian factorizations, in two independent layers:
//!
//! * an exact symplectic layer ([`symplectic`]): 4×4 phase-space images of the
//!   operator and of each factor in its two factorizations, with closed-form
//!   checks (symplectic form, matrix-log identity, product equality);
//! * a truncated two-mode Fock layer ([`fock`], [`residuals`], [`epr`]):
//!   dense-matrix realizations of the same operators, EPR-type eigenstates,
//!   and interior-projected residuals that quantify how well the finite
//!   truncation reproduces the exact algebra;
//! * a reporting layer ([`verify`], [`report`], [`thresholds`]) that bundles
//!   the residuals from both layers into deterministic, machine-diffable
//!   reports keyed by stable names, plus truncation sweeps.
//!
//! The two layers share no numerics, which is the point: every claim checked
//! here is computed twice, through routes that can only agree if the algebra
//! is right. [`conventions`] fixes the ordering and sign conventions once,
//! for both layers.

extern crate blas_src;

pub mod conventions;
pub mod epr;
pub mod fock;
pub mod params;
pub mod report;
pub mod residuals;
pub mod symplectic;
pub mod thresholds;
pub mod truncation;
pub mod verify;

pub use epr::{
    db_pair_commutator_residual, dilation_fidelity, eigen_residuals, eta_db_state, eta_state,
    f2_action_fidelity, kernel_residual, overlap_residual, s2_scaling_fidelity, xi_state,
    EigenPair, EigenResiduals, EprError, EtaDbLabel, EtaLabel, FidelityCheck, ScalingCheck,
    XiLabel,
};
pub use fock::{FockError, FockOperator, FockSpace, FockState, Mode, QuadratureKind};
pub use params::{AbcdParams, ParamError, SqueezeParam};
pub use report::ResidualReport;
pub use residuals::{
    form_equivalence_residual, heisenberg_residuals, su11_residuals, vacuum_covariance,
    CovarianceCheck, HeisenbergResiduals, Su11Residuals,
};
pub use symplectic::{
    compose, decompose, factor_symplectic, log_identity_residual, symplectic_residual,
    target_symplectic, FactorSequence, Form, FormChoice, GaussianFactor, SymplecticError,
    SymplecticMatrix,
};
pub use truncation::TruncationConfig;
pub use verify::{schmidt_deviation, sweep, sweep_margin, verify_bundle, StateChecks};
