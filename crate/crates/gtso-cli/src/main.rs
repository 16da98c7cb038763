//! Command-line front end for the verification library: factor decomposition
//! export, full residual reports, state tables, and truncation sweeps.
//!
//! Exit codes follow the scripted contract: `0` when every evaluated residual
//! is within its threshold, `1` when the report ran but at least one residual
//! exceeds its threshold, and `2` on invalid input. Identical inputs produce
//! byte-identical output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;

use gtso_core::epr::{eta_db_state, eta_state, xi_state, EtaDbLabel, EtaLabel, XiLabel};
use gtso_core::fock::FockSpace;
use gtso_core::params::{AbcdParams, SqueezeParam};
use gtso_core::report::ResidualReport;
use gtso_core::residuals::vacuum_covariance;
use gtso_core::symplectic::{
    decompose, factor_symplectic, symplectic_residual, target_symplectic, FormChoice,
};
use gtso_core::truncation::TruncationConfig;
use gtso_core::verify::{sweep, verify_bundle, StateChecks};

#[derive(Parser)]
#[command(
    name = "gtso",
    version,
    about = "Symplectic and truncated Fock-space verification of generalized two-mode squeezing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the Gaussian factor decomposition with its symplectic matrices.
    Decompose(DecomposeArgs),
    /// Run the residual suite and report pass/fail per check.
    Verify(VerifyArgs),
    /// Export a state's amplitude table (and covariance for gtso_vacuum).
    State(StateArgs),
    /// Re-run the verification bundle across truncation sizes.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Operator parameters `a,b,c,d` with ad − bc = 1 and a, d > 0.
    #[arg(long, value_parser = parse_abcd, default_value = "1,0,0,1")]
    abcd: AbcdParams,
    /// Factorization form(s) to exercise: eq22, eq25, or both.
    #[arg(long, value_parser = parse_form, default_value = "both")]
    form: FormChoice,
}

#[derive(Args)]
struct TruncationArgs {
    /// Fock cutoff per mode (levels 0..=nmax in each mode).
    #[arg(long, default_value_t = 16)]
    nmax: usize,
    /// Edge levels per mode excluded from interior residuals.
    #[arg(long, default_value_t = 6)]
    margin: usize,
    /// Numerical tolerance recorded in the truncation configuration.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct LabelArgs {
    /// Difference-family label `re,im`; enables its state checks.
    #[arg(long, value_parser = parse_complex)]
    eta: Option<C64>,
    /// Sum-family label `re,im`; enables its state checks.
    #[arg(long, value_parser = parse_complex)]
    xi: Option<C64>,
    /// Squeezing parameter; enables the direct-squeezer checks.
    #[arg(long)]
    lambda: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    truncation: TruncationArgs,
    #[command(flatten)]
    labels: LabelArgs,
    /// Seed for the randomized parameter-draw section.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct StateArgs {
    /// Which state to export.
    #[arg(value_enum)]
    which: StateKind,
    /// Complex label `re,im` (required for eta, xi, and eta_db).
    #[arg(long, value_parser = parse_complex)]
    label: Option<C64>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    truncation: TruncationArgs,
    /// Smallest |amplitude| included in the table.
    #[arg(long, default_value_t = 1e-12)]
    amplitude_floor: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Base truncation; each swept size reuses its margin fraction.
    #[command(flatten)]
    truncation: TruncationArgs,
    #[command(flatten)]
    labels: LabelArgs,
    /// Truncation sizes to sweep, ascending, at least two (e.g. 10,14,18,22).
    #[arg(long = "nmax-list", value_delimiter = ',', required = true)]
    nmax_list: Vec<usize>,
    /// Seed for the randomized parameter-draw section.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format; the default CSV has one row per truncation size.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    output: OutputFormat,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateKind {
    /// Transformed vacuum `U|00⟩`, with its covariance matrix.
    #[value(name = "gtso_vacuum")]
    GtsoVacuum,
    /// Difference-family eigenstate for the given label.
    Eta,
    /// Sum-family eigenstate for the given label.
    Xi,
    /// Deformed-family eigenstate for the given label and parameters.
    #[value(name = "eta_db")]
    EtaDb,
}

impl StateKind {
    fn name(self) -> &'static str {
        match self {
            Self::GtsoVacuum => "gtso_vacuum",
            Self::Eta => "eta",
            Self::Xi => "xi",
            Self::EtaDb => "eta_db",
        }
    }
}

fn parse_floats<const N: usize>(text: &str, shape: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated values ({shape}), got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number `{part}`: {e}"))?;
    }
    Ok(out)
}

fn parse_abcd(text: &str) -> Result<AbcdParams, String> {
    let [a, b, c, d] = parse_floats::<4>(text, "a,b,c,d")?;
    AbcdParams::new(a, b, c, d).map_err(|e| e.to_string())
}

fn parse_complex(text: &str) -> Result<C64, String> {
    let [re, im] = parse_floats::<2>(text, "re,im")?;
    Ok(C64::new(re, im))
}

fn parse_form(text: &str) -> Result<FormChoice, String> {
    text.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Decompose(args) => cmd_decompose(args),
        Command::Verify(args) => cmd_verify(args),
        Command::State(args) => cmd_state(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

/// Writes `text` to `--out` when given, stdout otherwise.
fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing output to {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).context("serializing output")?;
    text.push('\n');
    Ok(text)
}

/// Builds the optional state checks, validating the squeeze parameter.
fn state_checks(labels: &LabelArgs) -> Result<StateChecks> {
    let squeeze = match labels.lambda {
        Some(lambda) => {
            Some(SqueezeParam::from_lambda(lambda).context("invalid --lambda")?)
        }
        None => None,
    };
    Ok(StateChecks {
        eta: labels.eta,
        xi: labels.xi,
        squeeze,
    })
}

/// Warns on stderr when a label sits outside the accuracy envelope, where
/// edge amplitudes are no longer negligible and residuals become
/// truncation-dominated.
fn warn_envelope(name: &str, exceeds: bool) {
    if exceeds {
        eprintln!(
            "warning: |{name}| exceeds the accuracy envelope; residuals may be truncation-dominated"
        );
    }
}

fn warn_label_envelopes(checks: &StateChecks, params: AbcdParams) {
    if let Some(eta) = checks.eta {
        warn_envelope("eta", EtaLabel::new(eta).exceeds_envelope());
        warn_envelope("eta_db", EtaDbLabel::new(eta, params).exceeds_envelope());
    }
    if let Some(xi) = checks.xi {
        warn_envelope("xi", XiLabel::new(xi).exceeds_envelope());
    }
}

/// Formats a float cell for CSV output (scientific, shortest exponent).
fn cell(value: f64) -> String {
    format!("{value:e}")
}

#[derive(Serialize)]
struct FactorRow {
    kind: &'static str,
    parameter: f64,
    matrix: [[f64; 4]; 4],
}

#[derive(Serialize)]
struct FormDecomposition {
    form: &'static str,
    factors: Vec<FactorRow>,
    composed: [[f64; 4]; 4],
    residual: f64,
    sjs_residual: f64,
}

#[derive(Serialize)]
struct DecomposeOutput {
    params: AbcdParams,
    form: FormChoice,
    target: [[f64; 4]; 4],
    forms: Vec<FormDecomposition>,
}

fn cmd_decompose(args: DecomposeArgs) -> Result<ExitCode> {
    let params = args.params.abcd;
    let target = target_symplectic(params);
    let mut forms = Vec::new();
    for &form in args.params.form.forms() {
        let sequence = decompose(params, form);
        let composed = sequence.compose();
        let factors = sequence
            .factors()
            .iter()
            .map(|&factor| FactorRow {
                kind: factor.name(),
                parameter: factor.parameter(),
                matrix: factor_symplectic(factor).to_rows(),
            })
            .collect();
        forms.push(FormDecomposition {
            form: form.wire_name(),
            factors,
            residual: (composed.matrix() - target.matrix()).amax(),
            sjs_residual: symplectic_residual(composed.matrix()),
            composed: composed.to_rows(),
        });
    }
    let output = DecomposeOutput {
        params,
        form: args.params.form,
        target: target.to_rows(),
        forms,
    };
    let text = match args.output.output {
        OutputFormat::Json => to_json(&output)?,
        OutputFormat::Csv => decompose_csv(&output),
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn matrix_cells(matrix: &[[f64; 4]; 4]) -> String {
    matrix
        .iter()
        .flatten()
        .map(|&v| cell(v))
        .collect::<Vec<_>>()
        .join(",")
}

fn decompose_csv(output: &DecomposeOutput) -> String {
    let mut lines = vec![format!(
        "form,entry,kind,parameter,{},residual",
        (0..4)
            .flat_map(|i| (0..4).map(move |j| format!("m{i}{j}")))
            .collect::<Vec<_>>()
            .join(",")
    )];
    lines.push(format!(",target,,,{},", matrix_cells(&output.target)));
    for form in &output.forms {
        for factor in &form.factors {
            lines.push(format!(
                "{},factor,{},{},{},",
                form.form,
                factor.kind,
                cell(factor.parameter),
                matrix_cells(&factor.matrix)
            ));
        }
        lines.push(format!(
            "{},composed,,,{},{}",
            form.form,
            matrix_cells(&form.composed),
            cell(form.residual)
        ));
    }
    lines.push(String::new());
    lines.join("\n")
}

fn verify_csv(report: &ResidualReport) -> String {
    let keys: Vec<&str> = report.residuals.keys().map(String::as_str).collect();
    let residuals: Vec<String> = keys.iter().map(|k| cell(report.residuals[*k])).collect();
    let thresholds: Vec<String> = keys.iter().map(|k| cell(report.thresholds[*k])).collect();
    format!(
        "row,{},pass\nresidual,{},{}\nthreshold,{},\n",
        keys.join(","),
        residuals.join(","),
        report.pass,
        thresholds.join(",")
    )
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let config = TruncationConfig::new(
        args.truncation.nmax,
        args.truncation.margin,
        args.truncation.tol,
    )
    .context("invalid truncation configuration")?;
    let checks = state_checks(&args.labels)?;
    warn_label_envelopes(&checks, args.params.abcd);
    let space = FockSpace::new(config);
    let report = verify_bundle(args.params.abcd, args.params.form, &space, checks, args.seed);
    let text = match args.output.output {
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Csv => verify_csv(&report),
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct AmplitudeRow {
    n1: usize,
    n2: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct StateOutput {
    which: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<[f64; 2]>,
    params: AbcdParams,
    truncation: TruncationConfig,
    amplitude_floor: f64,
    amplitudes: Vec<AmplitudeRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    covariance: Option<[[f64; 4]; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    covariance_residual: Option<f64>,
}

fn cmd_state(args: StateArgs) -> Result<ExitCode> {
    let config = TruncationConfig::new(
        args.truncation.nmax,
        args.truncation.margin,
        args.truncation.tol,
    )
    .context("invalid truncation configuration")?;
    let space = FockSpace::new(config);
    let params = args.params.abcd;

    let require_label = || {
        args.label.with_context(|| {
            format!("--label re,im is required for `{}`", args.which.name())
        })
    };
    let (state, covariance, covariance_residual) = match args.which {
        StateKind::GtsoVacuum => {
            let form = args.params.form.forms()[0];
            let u = space.realize_gtso(params, form);
            let check = vacuum_covariance(&u, params, &space);
            (u.dot(&space.vacuum()), Some(check.covariance), Some(check.residual))
        }
        StateKind::Eta => {
            let label = EtaLabel::new(require_label()?);
            warn_envelope("eta", label.exceeds_envelope());
            (eta_state(label, &space), None, None)
        }
        StateKind::Xi => {
            let label = XiLabel::new(require_label()?);
            warn_envelope("xi", label.exceeds_envelope());
            (xi_state(label, &space), None, None)
        }
        StateKind::EtaDb => {
            let label = EtaDbLabel::new(require_label()?, params);
            warn_envelope("eta_db", label.exceeds_envelope());
            (eta_db_state(label, &space), None, None)
        }
    };

    let amplitudes = state
        .iter()
        .enumerate()
        .filter(|(_, amp)| amp.norm() > args.amplitude_floor)
        .map(|(index, amp)| {
            let (n1, n2) = space.basis_levels(index);
            AmplitudeRow { n1, n2, re: amp.re, im: amp.im }
        })
        .collect();

    let output = StateOutput {
        which: args.which.name(),
        label: args.label.map(|z| [z.re, z.im]),
        params,
        truncation: config,
        amplitude_floor: args.amplitude_floor,
        amplitudes,
        covariance,
        covariance_residual,
    };
    let text = match args.output.output {
        OutputFormat::Json => to_json(&output)?,
        OutputFormat::Csv => state_csv(&output),
    };
    emit(&text, args.output.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn state_csv(output: &StateOutput) -> String {
    let mut lines = vec!["n1,n2,re,im".to_owned()];
    for row in &output.amplitudes {
        lines.push(format!("{},{},{},{}", row.n1, row.n2, cell(row.re), cell(row.im)));
    }
    if let Some(covariance) = &output.covariance {
        lines.push(String::new());
        lines.push("covariance,q1,p1,q2,p2".to_owned());
        for (name, row) in ["q1", "p1", "q2", "p2"].iter().zip(covariance) {
            lines.push(format!("{name},{}", row.map(cell).join(",")));
        }
    }
    lines.push(String::new());
    lines.join("\n")
}

fn sweep_csv(reports: &[ResidualReport]) -> String {
    let keys: Vec<&str> = reports[0].residuals.keys().map(String::as_str).collect();
    let mut lines = vec![format!("n_max,margin,pass,{}", keys.join(","))];
    for report in reports {
        let values: Vec<String> = keys.iter().map(|k| cell(report.residuals[*k])).collect();
        lines.push(format!(
            "{},{},{},{}",
            report.truncation.n_max(),
            report.truncation.margin(),
            report.pass,
            values.join(",")
        ));
    }
    lines.push(String::new());
    lines.join("\n")
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    if args.nmax_list.len() < 2 {
        bail!("--nmax-list needs at least two entries, got {}", args.nmax_list.len());
    }
    if args.nmax_list.windows(2).any(|w| w[0] >= w[1]) {
        bail!("--nmax-list must be strictly ascending");
    }
    let base = TruncationConfig::new(
        args.truncation.nmax,
        args.truncation.margin,
        args.truncation.tol,
    )
    .context("invalid truncation configuration")?;
    let checks = state_checks(&args.labels)?;
    warn_label_envelopes(&checks, args.params.abcd);
    let reports = sweep(
        args.params.abcd,
        args.params.form,
        &args.nmax_list,
        base,
        checks,
        args.seed,
    )
    .context("invalid swept truncation configuration")?;
    let text = match args.output {
        OutputFormat::Json => to_json(&reports)?,
        OutputFormat::Csv => sweep_csv(&reports),
    };
    emit(&text, args.out.as_ref())?;
    Ok(if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
