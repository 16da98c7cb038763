//! Bundled verification runs.
//!
//! [`verify_bundle`] evaluates every residual diagnostic the crate provides
//! for one parameter set — factorization and group membership at the
//! quadrature-matrix layer, conjugation laws, covariance transport, algebra
//! closure and form equivalence at the truncated-space layer, plus the
//! optional state-level checks selected through [`StateChecks`] — and
//! collects them in a single [`ResidualReport`]. [`sweep`] repeats the bundle
//! over a list of truncation sizes so convergence with `n_max` can be
//! inspected directly.
//!
//! Report keys are stable dot-separated strings (`"heisenberg.eq22.q_plus"`,
//! `"epr.overlap"`, …) so downstream tooling can diff serialized reports
//! across runs and releases.

use num_complex::Complex64 as C64;

use crate::epr::{
    eigen_residuals, eta_db_state, eta_state, f2_action_fidelity, kernel_residual,
    overlap_residual, s2_scaling_fidelity, xi_state, EigenPair, EtaDbLabel, EtaLabel, XiLabel,
};
use crate::fock::{FockSpace, FockState};
use crate::params::{sample_params, AbcdParams, SqueezeParam};
use crate::report::ResidualReport;
use crate::residuals::{
    form_equivalence_residual, heisenberg_residuals, su11_residuals, vacuum_covariance,
};
use crate::symplectic::{
    decompose, log_identity_residual, symplectic_residual, target_symplectic, Form, FormChoice,
};
use crate::thresholds;
use crate::truncation::{ConfigError, TruncationConfig};

/// Number of seeded parameter draws in the random-sampling section of a
/// bundle.
const DRAW_COUNT: usize = 100;

/// Optional state-level checks folded into a verification bundle.
///
/// Every field defaults to `None`, which restricts the bundle to the
/// operator-level diagnostics.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StateChecks {
    /// Label for the difference-position family; enables its eigen-relation
    /// checks, the deformed-pair checks, and the operator-action fidelity.
    pub eta: Option<C64>,
    /// Label for the sum-position family; enables its eigen-relation checks
    /// and, together with `eta`, the overlap and kernel comparisons.
    pub xi: Option<C64>,
    /// Squeezing parameter; enables the direct-squeezer conjugation and
    /// Schmidt-profile checks and, together with `eta`, the label-rescaling
    /// law.
    pub squeeze: Option<SqueezeParam>,
}

/// Evaluates the full diagnostic suite for `params` and gathers the residuals
/// in a [`ResidualReport`].
///
/// The quadrature-matrix and truncated-operator checks run once per form
/// selected by `form`, with the form's wire name embedded in the report key.
/// The random-draw section re-verifies the factorization, group membership,
/// and scaling-log identity over [`DRAW_COUNT`] seeded parameter draws (both
/// forms each). State-level checks are added per [`StateChecks`].
pub fn verify_bundle(
    params: AbcdParams,
    form: FormChoice,
    space: &FockSpace,
    checks: StateChecks,
    seed: u64,
) -> ResidualReport {
    let mut report = ResidualReport::new(params, form, space.config());
    let target = target_symplectic(params);

    for &f in form.forms() {
        let wire = f.wire_name();
        let composed = decompose(params, f).compose();
        report.record(
            &format!("symplectic.compose.{wire}"),
            (composed.matrix() - target.matrix()).amax(),
            thresholds::FACTORIZATION,
        );
        report.record(
            &format!("symplectic.sjs.{wire}"),
            symplectic_residual(composed.matrix()),
            thresholds::SYMPLECTIC_GROUP,
        );

        let u = space.realize_gtso(params, f);
        for (line, value) in heisenberg_residuals(&u, params, space).named() {
            report.record(
                &format!("heisenberg.{wire}.{line}"),
                value,
                thresholds::HEISENBERG,
            );
        }
        report.record(
            &format!("covariance.{wire}.max_dev"),
            vacuum_covariance(&u, params, space).residual,
            thresholds::COVARIANCE,
        );
        report.record(
            &format!("interior_unitarity.{wire}"),
            space.interior_unitarity_residual(&u),
            thresholds::INTERIOR_UNITARITY,
        );
    }

    report.record(
        "log_identity",
        log_identity_residual(params).unwrap_or(f64::MAX),
        thresholds::SCALING_LOG,
    );

    let su11 = su11_residuals(space);
    report.record("su11.plus_minus", su11.plus_minus, thresholds::SU11);
    report.record("su11.zero_plus", su11.zero_plus, thresholds::SU11);
    report.record("su11.zero_minus", su11.zero_minus, thresholds::SU11);
    report.record(
        "form_equiv.max_dev",
        form_equivalence_residual(params, space),
        thresholds::FORM_EQUIVALENCE,
    );

    let (mut compose_max, mut sjs_max, mut log_max) = (0.0f64, 0.0f64, 0.0f64);
    for &draw in &sample_params(seed, DRAW_COUNT) {
        let draw_target = target_symplectic(draw);
        for f in Form::ALL {
            let composed = decompose(draw, f).compose();
            compose_max = compose_max.max((composed.matrix() - draw_target.matrix()).amax());
            sjs_max = sjs_max.max(symplectic_residual(composed.matrix()));
        }
        log_max = log_max.max(log_identity_residual(draw).unwrap_or(f64::MAX));
    }
    report.record("draws.compose_max", compose_max, thresholds::FACTORIZATION);
    report.record("draws.sjs_max", sjs_max, thresholds::SYMPLECTIC_GROUP);
    report.record("draws.log_max", log_max, thresholds::SCALING_LOG);

    if let Some(eta) = checks.eta {
        let label = EtaLabel::new(eta);
        let state = eta_state(label, space);
        record_eigen(
            &mut report,
            "epr.eta",
            &state,
            EigenPair::Eta,
            (eta.re, eta.im),
            space,
        );

        let db_state = eta_db_state(EtaDbLabel::new(eta, params), space);
        record_eigen(
            &mut report,
            "epr.db",
            &db_state,
            EigenPair::Db(params),
            (eta.re, eta.im),
            space,
        );

        let (deficit, phase) = match f2_action_fidelity(label, params, space) {
            Ok(check) => (check.deficit, check.phase_deviation),
            Err(_) => (f64::MAX, f64::MAX),
        };
        report.record("epr.f2.deficit", deficit, thresholds::F2_ACTION_DEFICIT);
        report.record("epr.f2.phase", phase, thresholds::F2_ACTION_PHASE);
    }

    if let Some(xi) = checks.xi {
        let state = xi_state(XiLabel::new(xi), space);
        record_eigen(
            &mut report,
            "epr.xi",
            &state,
            EigenPair::Xi,
            (xi.re, xi.im),
            space,
        );
    }

    if let (Some(eta), Some(xi)) = (checks.eta, checks.xi) {
        report.record(
            "epr.overlap",
            overlap_residual(XiLabel::new(xi), EtaLabel::new(eta), space),
            thresholds::OVERLAP,
        );
        report.record(
            "epr.kernel",
            kernel_residual(XiLabel::new(xi), EtaDbLabel::new(eta, params), space),
            thresholds::KERNEL,
        );
    }

    if let Some(sp) = checks.squeeze {
        let u = space.realize_s2(sp);
        report.record(
            "s2.heisenberg.max",
            heisenberg_residuals(&u, sp.gtso_params(), space).max(),
            thresholds::S2_SCALING,
        );
        report.record(
            "s2.schmidt.max_dev",
            schmidt_deviation(sp, space),
            thresholds::SCHMIDT,
        );
        if let Some(eta) = checks.eta {
            let (deficit, ratio) = match s2_scaling_fidelity(sp, EtaLabel::new(eta), space) {
                Ok(check) => (check.deficit, check.ratio_deviation),
                Err(_) => (f64::MAX, f64::MAX),
            };
            report.record("epr.s2.deficit", deficit, thresholds::F2_ACTION_DEFICIT);
            report.record("epr.s2.ratio", ratio, thresholds::SCALING_RATIO);
        }
    }

    report
}

/// Records the two eigen-relation residuals of one operator pair under
/// `prefix` (`.eigen_q` for the position-flavored line, `.eigen_p` for the
/// momentum-flavored one). A degenerate state maps to `f64::MAX` so the
/// report fails rather than panicking.
fn record_eigen(
    report: &mut ResidualReport,
    prefix: &str,
    state: &FockState,
    pair: EigenPair,
    eigenvalues: (f64, f64),
    space: &FockSpace,
) {
    let (first, second) = match eigen_residuals(state, pair, eigenvalues, space) {
        Ok(r) => (r.first, r.second),
        Err(_) => (f64::MAX, f64::MAX),
    };
    report.record(&format!("{prefix}.eigen_q"), first, thresholds::EIGEN_RELATION);
    report.record(&format!("{prefix}.eigen_p"), second, thresholds::EIGEN_RELATION);
}

/// Largest deviation of the squeezer's vacuum image from the two-mode
/// squeezed-vacuum profile: pair amplitudes `|⟨n,n|S₂|00⟩|` are compared
/// against `tanhⁿ|λ| / cosh λ` and every off-pair amplitude against zero.
pub fn schmidt_deviation(sp: SqueezeParam, space: &FockSpace) -> f64 {
    let image = space.realize_s2(sp).dot(&space.vacuum());
    let tanh = sp.lambda.tanh().abs();
    let cosh = sp.lambda.cosh();
    let mut deviation = 0.0f64;
    for (index, amplitude) in image.iter().enumerate() {
        let (n1, n2) = space.basis_levels(index);
        let predicted = if n1 == n2 { tanh.powi(n1 as i32) / cosh } else { 0.0 };
        deviation = deviation.max((amplitude.norm() - predicted).abs());
    }
    deviation
}

/// Margin used for a sweep row: the base configuration's margin fraction
/// re-applied at the row's `n_max`, rounded and clamped to the valid
/// `2 ..= n_max − 1` range.
pub fn sweep_margin(n_max: usize, base: TruncationConfig) -> usize {
    let scaled = (n_max as f64 * base.margin() as f64 / base.n_max() as f64).round() as usize;
    scaled.clamp(2, n_max.saturating_sub(1))
}

/// Runs [`verify_bundle`] once per entry of `nmax_list`, holding the margin
/// fraction and tolerance of `base` fixed (see [`sweep_margin`]), and returns
/// the reports in the same order. Residuals limited by truncation should
/// shrink down the list when it is ascending; exactly-representable checks
/// stay at machine precision throughout.
pub fn sweep(
    params: AbcdParams,
    form: FormChoice,
    nmax_list: &[usize],
    base: TruncationConfig,
    checks: StateChecks,
    seed: u64,
) -> Result<Vec<ResidualReport>, ConfigError> {
    let mut reports = Vec::with_capacity(nmax_list.len());
    for &n_max in nmax_list {
        let config = TruncationConfig::new(n_max, sweep_margin(n_max, base), base.tol())?;
        let space = FockSpace::new(config);
        reports.push(verify_bundle(params, form, &space, checks, seed));
    }
    Ok(reports)
}
