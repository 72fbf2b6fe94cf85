//! `tcplan`: topological complexity bounds, explicit motion planners and
//! their numerical verification from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

mod output;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tcplan::algebra::{validate_algebra, zdcl, GradedAlgebra, Presentation, ZdclMode};
use tcplan::catalog::{catalog_space, tc_bounds, tc_bounds_for_algebra, SpaceDescriptor, SpaceSpec};
use tcplan::planner::{forward_kinematics, planner_for, sample_path, Factor, PlanError, Planner};
use tcplan::verify::{reconcile, verify_planner, Reconciliation, VerifyConfig, VerifyError, VerifyReport};

use output::{json, PathTrace, Sample};

#[derive(Parser)]
#[command(name = "tcplan", version, about = "Topological complexity bounds and explicit motion planners")]
struct Cli {
    /// Print only the machine-readable output.
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower and upper bounds on the topological complexity of a space.
    Bounds(BoundsArgs),
    /// Plan a path between two configurations.
    Plan(PlanArgs),
    /// Check a planner numerically on seeded samples.
    Verify(VerifyArgs),
    /// Zero-divisor cup-length of a cohomology algebra.
    Algebra(AlgebraArgs),
}

#[derive(Args)]
struct BoundsArgs {
    /// Space spec, e.g. `sphere:4` or `product(circle,sphere:2)`.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    spec: Option<String>,
    /// Cohomology algebra presentation in JSON.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct PlanArgs {
    spec: String,
    /// Start point: comma-separated coordinates, factors concatenated in order.
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    /// End point, same format as `--from`.
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    /// Number of evenly spaced samples, endpoints included.
    #[arg(long, default_value_t = 11)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Bar lengths; appends joint positions of the arm to every sample.
    #[arg(long, value_delimiter = ',')]
    kinematics: Option<Vec<f64>>,
}

#[derive(Args)]
struct VerifyArgs {
    spec: String,
    #[arg(long, default_value_t = VerifyConfig::default().pairs)]
    pairs: usize,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    /// Perturbation size for the continuity check.
    #[arg(long, default_value_t = VerifyConfig::default().delta)]
    delta: f64,
    /// Minimum normalized rule weight for a pair to enter the continuity check.
    #[arg(long, default_value_t = VerifyConfig::default().margin_eta)]
    eta: f64,
    /// Endpoint and unit-norm tolerance.
    #[arg(long, default_value_t = VerifyConfig::default().tolerance)]
    tol: f64,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Cohomology algebra presentation in JSON.
    #[arg(long, required_unless_present = "export", conflicts_with = "export")]
    file: Option<PathBuf>,
    /// Print the presentation of a catalog space's algebra instead.
    #[arg(long, value_name = "SPEC")]
    export: Option<String>,
    /// Search products of a full basis of zero divisors rather than the
    /// canonical divisors `1⊗a − a⊗1`.
    #[arg(long)]
    exhaustive: bool,
    /// Longest product searched; defaults to twice the top degree.
    #[arg(long)]
    max_len: Option<usize>,
}

/// Errors that exit with status 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: Result<T, E>) -> Result<T> {
    r.map_err(|e| InputError(e.into()).into())
}

fn input_err(msg: String) -> anyhow::Error {
    InputError(anyhow!(msg)).into()
}

struct Output {
    stdout: String,
    summary: String,
    passed: bool,
}

fn parse_spec(text: &str) -> Result<(SpaceSpec, SpaceDescriptor)> {
    let spec: SpaceSpec = input(text.parse()).with_context(|| format!("in space spec `{text}`"))?;
    let descriptor = input(catalog_space(&spec))?;
    Ok((spec, descriptor))
}

fn read_algebra(path: &Path) -> Result<GradedAlgebra> {
    let text = input(fs::read_to_string(path)).with_context(|| format!("reading {}", path.display()))?;
    let presentation: Presentation =
        input(serde_json::from_str(&text)).with_context(|| format!("parsing {}", path.display()))?;
    input(validate_algebra(&presentation)).with_context(|| format!("validating {}", path.display()))
}

fn parse_coords(text: &str, flag: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|token| {
            let token = token.trim();
            token
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| input_err(format!("{flag}: `{token}` is not a finite number")))
        })
        .collect()
}

fn bounds(args: &BoundsArgs) -> Result<Output> {
    let report = match (&args.spec, &args.file) {
        (_, Some(path)) => tc_bounds_for_algebra(&read_algebra(path)?),
        (Some(text), None) => {
            let (_, d) = parse_spec(text)?;
            tc_bounds(&d, d.planner_rules)
        }
        (None, None) => unreachable!("clap requires a spec or a file"),
    };
    Ok(Output {
        summary: format!(
            "{}: {} ≤ TC ≤ {}{}",
            report.space,
            report.lower,
            report.upper,
            if report.exact { " (exact)" } else { "" }
        ),
        stdout: json(&report)?,
        passed: true,
    })
}

fn plan(args: &PlanArgs) -> Result<Output> {
    let (spec, _) = parse_spec(&args.spec)?;
    let planner = input(planner_for(&spec))?;
    if args.samples < 2 {
        return Err(input_err(format!("--samples must be at least 2, got {}", args.samples)));
    }
    let space = planner.space();
    let from = input(space.parse_point(&parse_coords(&args.from, "--from")?)).context("--from")?;
    let to = input(space.parse_point(&parse_coords(&args.to, "--to")?)).context("--to")?;
    if let Some(lengths) = &args.kinematics {
        let arm = space.factors.iter().all(|f| *f == Factor::Sphere(1))
            || space.factors.iter().all(|f| *f == Factor::Sphere(2));
        if !arm {
            return Err(input_err(format!(
                "--kinematics needs an arm space (circles or 2-spheres), not {spec}"
            )));
        }
        if lengths.len() != space.factors.len() {
            return Err(input_err(format!(
                "--kinematics: expected {} bar lengths, found {}",
                space.factors.len(),
                lengths.len()
            )));
        }
    }
    // a coverage gap is a planner bug, not an input error
    let result = planner.plan(&from, &to)?;
    let mut samples = Vec::with_capacity(args.samples);
    for (t, point) in sample_path(&result.path, args.samples) {
        let joints = match &args.kinematics {
            Some(lengths) => Some(input(forward_kinematics(&point, lengths))?),
            None => None,
        };
        samples.push(Sample {
            t,
            coords: point.flat(),
            joints,
        });
    }
    let rule = planner.rule(result.rule_index).name();
    let trace = PathTrace {
        space: planner.label(),
        from: &from.flat(),
        to: &to.flat(),
        rule_index: result.rule_index,
        rule: &rule,
        cells: &result.cells,
        samples,
    };
    Ok(Output {
        stdout: match args.format {
            Format::Json => trace.to_json()?,
            Format::Csv => trace.to_csv(),
        },
        summary: format!("{}: rule {} ({rule})", planner.label(), result.rule_index),
        passed: true,
    })
}

#[derive(Serialize)]
#[serde(untagged)]
enum Reconciled {
    Agrees(Reconciliation),
    Disagrees { error: String },
}

#[derive(Serialize)]
struct VerifyJson {
    #[serde(flatten)]
    report: VerifyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    reconciliation: Option<Reconciled>,
}

fn verify(args: &VerifyArgs) -> Result<Output> {
    let (spec, descriptor) = parse_spec(&args.spec)?;
    let planner: Planner = input(planner_for(&spec))?;
    let cfg = VerifyConfig {
        seed: args.seed,
        pairs: args.pairs,
        delta: args.delta,
        margin_eta: args.eta,
        tolerance: args.tol,
        ..VerifyConfig::default()
    };
    input(cfg.validate())?;
    let report = verify_planner(&planner, &cfg)?;
    let reconciliation = match reconcile(&planner, &descriptor) {
        Ok(r) => Some(Reconciled::Agrees(r)),
        Err(VerifyError::NoKnownValue(_)) => None,
        Err(e) => Some(Reconciled::Disagrees { error: e.to_string() }),
    };
    let passed = report.passed && !matches!(reconciliation, Some(Reconciled::Disagrees { .. }));
    let summary = format!(
        "{}: {} with {} rules, usage {:?}",
        planner.label(),
        if passed { "pass" } else { "FAIL" },
        report.rule_count,
        report.rule_usage
    );
    Ok(Output {
        stdout: json(&VerifyJson { report, reconciliation })?,
        summary,
        passed,
    })
}

#[derive(Serialize)]
struct ZdclJson {
    mode: &'static str,
    max_len: usize,
    length: usize,
    witness: Vec<std::collections::BTreeMap<String, String>>,
    product_value: std::collections::BTreeMap<String, String>,
    lower_bound: usize,
}

fn algebra(args: &AlgebraArgs) -> Result<Output> {
    if let Some(text) = &args.export {
        let (_, d) = parse_spec(text)?;
        return Ok(Output {
            stdout: json(&d.algebra.to_presentation())?,
            summary: format!("{}: algebra of rank {}", d.spec, d.algebra.dim()),
            passed: true,
        });
    }
    let path = args.file.as_ref().expect("clap requires --file or --export");
    let alg = read_algebra(path)?;
    let max_len = args.max_len.unwrap_or(2 * alg.top_degree() as usize).max(1);
    let mode = if args.exhaustive { ZdclMode::Exhaustive } else { ZdclMode::Canonical };
    let r = input(zdcl(&alg, mode, max_len, None))?;
    Ok(Output {
        summary: format!("zero-divisor cup-length {}, so TC ≥ {}", r.length, r.length + 1),
        stdout: json(&ZdclJson {
            mode: if args.exhaustive { "exhaustive" } else { "canonical" },
            max_len,
            length: r.length,
            witness: r.witness.iter().map(|w| w.to_label_map()).collect(),
            product_value: r.product_value.to_label_map(),
            lower_bound: r.length + 1,
        })?,
        passed: true,
    })
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Bounds(a) => bounds(a),
        Command::Plan(a) => plan(a),
        Command::Verify(a) => verify(a),
        Command::Algebra(a) => algebra(a),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|e| e.is::<InputError>()) {
        return 2;
    }
    match err.downcast_ref::<PlanError>() {
        Some(PlanError::CoverageGap) => 1,
        Some(PlanError::OutsideDomain { .. }) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", out.stdout.trim_end());
            if !cli.quiet {
                eprintln!("{}", out.summary);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(err) => {
            // diagnostics go to stderr even when quiet, since stdout stays empty
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
