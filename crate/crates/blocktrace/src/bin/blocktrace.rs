//! Command-line front end: matrix analysis dumps, single inequality checks,
//! fuzz campaigns and seeded matrix generation.
//!
//! Exit codes: 0 = pass, 1 = mathematical violation, 2 = usage/input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use blocktrace::decomp::{self, DEFAULT_PSD_TOL, HERMITIAN_REL_TOL};
use blocktrace::harness::{self, CheckParams, Hypothesis, ParamKind, DEFAULT_SLACK};
use blocktrace::io::{self, MatrixFile, SCHEMA_VERSION};
use blocktrace::randgen::{GenClass, GenSpec};
use blocktrace::sector::sector_angle;
use blocktrace::spectral::SchattenQ;
use blocktrace::{BlockMatrix, Error};

/// Default sector angle for fuzz campaigns when none is given.
const DEFAULT_CAMPAIGN_ALPHA: f64 = 0.3;

#[derive(Parser)]
#[command(name = "blocktrace", version, about = "Block-matrix partial-trace analysis and inequality fuzzing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump partial traces, partial transpose, partial determinants,
    /// verdicts and spectra of a matrix file as JSON.
    Analyze {
        /// Input matrix file.
        input: PathBuf,
        /// Write the analysis here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one registry inequality on a matrix file.
    Check {
        /// Registry id, e.g. "fm" or "ando-lowner".
        #[arg(long)]
        ineq: String,
        /// Input matrix file.
        #[arg(long)]
        input: PathBuf,
        /// Sector angle in radians (sector cases).
        #[arg(long)]
        alpha: Option<f64>,
        /// Schatten exponent: 1, 2, 3 or inf.
        #[arg(long)]
        q: Option<String>,
        /// Tensor power order.
        #[arg(long)]
        r: Option<u32>,
        /// Symmetric-function order.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Run seeded trials of one case (or all of them) and write a report.
    Fuzz {
        /// Registry id or "all".
        #[arg(long)]
        ineq: String,
        /// Generator class: psd, ppt, sector, density, hermitian, general.
        #[arg(long)]
        class: String,
        /// Blocks per side.
        #[arg(long)]
        n: usize,
        /// Block order.
        #[arg(long)]
        k: usize,
        /// Number of independent draws.
        #[arg(long)]
        trials: u64,
        /// Master seed; trial seeds derive from it by index.
        #[arg(long)]
        seed: u64,
        /// Sector angle for sector draws (default 0.3).
        #[arg(long)]
        alpha: Option<f64>,
        /// Report path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate one matrix and write it as a matrix file.
    Gen {
        /// Generator class: psd, ppt, sector, density, hermitian, general.
        #[arg(long)]
        class: String,
        /// Blocks per side.
        #[arg(long)]
        n: usize,
        /// Block order.
        #[arg(long)]
        k: usize,
        /// Seed.
        #[arg(long)]
        seed: u64,
        /// Sector angle (sector class).
        #[arg(long)]
        alpha: Option<f64>,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let tol = slack_from_env()?;
    let threads = threads_from_env()?;
    match cli.command {
        Command::Analyze { input, out } => analyze(&input, out.as_deref()),
        Command::Check { ineq, input, alpha, q, r, t } => {
            let q = q.map(|s| s.parse::<SchattenQ>()).transpose()?;
            let params = CheckParams { alpha, q, r, t, tol };
            check(&ineq, &input, &params)
        }
        Command::Fuzz { ineq, class, n, k, trials, seed, alpha, out } => {
            let class: GenClass = class.parse()?;
            fuzz(&ineq, class, n, k, trials, seed, alpha, &out, tol, threads)
        }
        Command::Gen { class, n, k, seed, alpha, out } => {
            let class: GenClass = class.parse()?;
            let spec = GenSpec::new(class, n, k, seed).with_alpha(alpha.unwrap_or(0.0));
            let block = spec.generate()?;
            MatrixFile::from_block(&block).write(&out)?;
            Ok(0)
        }
    }
}

fn slack_from_env() -> Result<f64, Error> {
    match std::env::var("BLOCKTRACE_TOL") {
        Ok(text) => text
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v >= 0.0)
            .ok_or_else(|| {
                Error::Usage(format!(
                    "BLOCKTRACE_TOL must be a nonnegative decimal, got {text:?}"
                ))
            }),
        Err(_) => Ok(DEFAULT_SLACK),
    }
}

fn threads_from_env() -> Result<usize, Error> {
    match std::env::var("BLOCKTRACE_THREADS") {
        Ok(text) => text.trim().parse::<usize>().map_err(|_| {
            Error::Usage(format!("BLOCKTRACE_THREADS must be an integer, got {text:?}"))
        }),
        Err(_) => Ok(0),
    }
}

fn matrix_value(m: &blocktrace::ComplexMatrix) -> Value {
    let d = m.dim();
    Value::Array(
        (0..d)
            .map(|i| {
                Value::Array(
                    (0..d)
                        .map(|j| {
                            let z = m.get(i, j);
                            json!([z.re, z.im])
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn analyze(input: &Path, out: Option<&Path>) -> Result<u8, Error> {
    let block = io::read_block(input)?;
    let hermitian =
        block.mat.hermitian_defect() <= HERMITIAN_REL_TOL * block.mat.max_norm().max(1.0);

    let tau = block.partial_transpose();
    let det = block.det();
    let report = sector_angle(&block.mat);
    let trace = block.mat.trace();

    let (eigenvalues, psd, ppt) = if hermitian {
        let eigs = decomp::hermitian_eigs(&block.mat)?;
        let verdict = decomp::psd_test(&block.mat, DEFAULT_PSD_TOL)?;
        let ppt = block.ppt_test(DEFAULT_PSD_TOL)?;
        (
            json!(eigs),
            serde_json::to_value(verdict).expect("verdicts serialize"),
            json!({
                "psd": ppt.psd,
                "psd_tau": ppt.psd_tau,
                "is_ppt": ppt.is_ppt(),
            }),
        )
    } else {
        (Value::Null, Value::Null, Value::Null)
    };

    let analysis = json!({
        "schema_version": SCHEMA_VERSION,
        "n": block.n,
        "k": block.k,
        "trace": [trace.re, trace.im],
        "hermitian": hermitian,
        "eigenvalues": eigenvalues,
        "psd": psd,
        "ppt": ppt,
        "sector": {
            "alpha_min": finite_or_null(report.alpha_min),
            "re_min_eig": report.re_min_eig,
        },
        "det": {
            "value": [det.value.re, det.value.im],
            "log_abs": finite_or_null(det.log_abs),
            "sign_phase": [det.sign_phase.re, det.sign_phase.im],
        },
        "tr1": matrix_value(&block.partial_trace_1()),
        "tr2": matrix_value(&block.partial_trace_2()),
        "partial_transpose": matrix_value(&tau.mat),
        "det1": matrix_value(&block.partial_det_1()),
        "det2": matrix_value(&block.partial_det_2()),
    });
    let text = serde_json::to_string(&analysis).expect("analysis serializes");
    emit(&text, out)?;
    Ok(0)
}

fn check(id: &str, input: &Path, params: &CheckParams) -> Result<u8, Error> {
    let block = io::read_block(input)?;
    let outcome = harness::evaluate_check(id, &block, params)?;
    let mut doc = serde_json::to_value(&outcome).expect("outcomes serialize");
    let obj = doc.as_object_mut().expect("outcome is an object");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("case".into(), json!(id));
    obj.insert("tol".into(), json!(params.tol));
    println!("{}", serde_json::to_string(&doc).expect("json"));
    Ok(if outcome.pass { 0 } else { 1 })
}

/// Campaign parameters for one case: the requested class when the case's
/// hypothesis admits it, otherwise the hypothesis' natural class (with the
/// block count forced to two for the two-block trace family).
fn campaign_spec(
    case: &harness::InequalityCase,
    class: GenClass,
    n: usize,
    k: usize,
    seed: u64,
    alpha: f64,
) -> GenSpec {
    let class = if case.hypothesis.admits(class) { class } else { case.hypothesis.natural_class() };
    let n = if case.hypothesis == Hypothesis::PsdTwoBlocks { 2 } else { n };
    let mut spec = GenSpec::new(class, n, k, seed);
    if class == GenClass::Sector {
        spec = spec.with_alpha(alpha);
    }
    spec
}

#[allow(clippy::too_many_arguments)]
fn fuzz(
    ineq: &str,
    class: GenClass,
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
    alpha: Option<f64>,
    out: &Path,
    tol: f64,
    threads: usize,
) -> Result<u8, Error> {
    let alpha = alpha.unwrap_or(DEFAULT_CAMPAIGN_ALPHA);
    // Defaults for the parameterized cases in campaign runs.
    let params = CheckParams {
        alpha: Some(alpha),
        q: Some(SchattenQ::Two),
        r: Some(2),
        t: Some(2),
        tol,
    };

    if ineq == "all" {
        let mut reports = Vec::new();
        let mut failures = 0u64;
        for case in harness::registry() {
            let spec = campaign_spec(case, class, n, k, seed, alpha);
            let report = harness::fuzz_case(case, &spec, trials, &params, threads)?;
            failures += report.failures;
            reports.push(report);
        }
        let text = serde_json::to_string(&reports).expect("reports serialize");
        io::write_atomic(out, text.as_bytes())?;
        println!("{text}");
        return Ok(if failures == 0 { 0 } else { 1 });
    }

    let case = harness::find_case(ineq)?;
    if !case.hypothesis.admits(class) {
        return Err(Error::Usage(format!(
            "hypothesis mismatch: case {ineq:?} requires class {}, got {class}",
            case.hypothesis.natural_class()
        )));
    }
    if case.hypothesis == Hypothesis::PsdTwoBlocks && n != 2 {
        return Err(Error::Usage(format!(
            "case {ineq:?} is stated for 2x2 block partitions; use --n 2 (got {n})"
        )));
    }
    let mut spec = GenSpec::new(class, n, k, seed);
    if class == GenClass::Sector {
        spec = spec.with_alpha(alpha);
    }
    let report = harness::fuzz_case(case, &spec, trials, &params, threads)?;
    let text = serde_json::to_string(&report).expect("report serializes");
    io::write_atomic(out, text.as_bytes())?;
    println!("{text}");
    Ok(if report.failures == 0 { 0 } else { 1 })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => io::write_atomic(path, text.as_bytes()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
