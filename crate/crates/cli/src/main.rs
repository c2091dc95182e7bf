//! `framelab` — finite-truncation diagnostics for frames built from
//! operator orbits on the disc: separation constants, frame bounds,
//! thinned-exponent sweeps, weighted composition operators, compressed
//! shifts, and weighted interpolation.

mod config;
mod experiments;
mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use config::{
    parse_f64_list, parse_pairs, parse_phi, parse_weight_kind, parse_zeros, CarlesonSpec,
    ConfigFile, Expectation, ExperimentSpec, FrameBoundsSpec, InterpCheck, InterpSpec, ModelCheck,
    ModelSpec, MuntzSweepSpec, OutputFormat, Quantity, WcoCheck, WcoSpec, PRNG_ID,
};
use framelab_core::interp::InterpolationProblemInput;
use report::meta;

/// Exit code when a `--expect` declaration disagrees with the verdict.
const EXIT_EXPECTATION: i32 = 2;

#[derive(Parser)]
#[command(
    name = "framelab",
    version,
    about = "Finite-truncation frame diagnostics for disc operator orbits",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Read the experiment from a JSON config file instead of flags.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write the report to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Output format (default: csv; wco and model default to json).
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// PRNG seed; required whenever the experiment draws random data.
    #[arg(long)]
    seed: Option<u64>,
    /// Declared outcome; exit code 2 when the run disagrees.
    #[arg(long, value_enum)]
    expect: Option<Expectation>,
}

#[derive(Subcommand)]
enum Command {
    /// Separation products and the Carleson constant of a disc sequence.
    Carleson {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated complex points, e.g. `0.5,0.75,0.3-0.2i`.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        points: Option<String>,
        /// Lower gate on the Carleson constant.
        #[arg(long, value_name = "DELTA")]
        delta_min: Option<f64>,
    },
    /// Frame bounds of a diagonal-operator orbit, closed form vs partial sums.
    FrameBounds {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated diagonal eigenvalues.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        mus: Option<String>,
        /// Comma-separated generator entries, one per eigenvalue.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        weights: Option<String>,
        /// Truncation scale for the partial-sum frame operator.
        #[arg(long, value_name = "N")]
        n_max: Option<u64>,
        /// Keep only every N-th orbit power.
        #[arg(long, value_name = "N")]
        stride: Option<u64>,
    },
    /// Sweep a thinned-exponent diagnostic over a grid of x values.
    MuntzSweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Exponent set: naturals, ceil, primes, or every-nth:N.
        #[arg(long, value_name = "SET")]
        set: Option<String>,
        /// Quantity to sweep.
        #[arg(long, value_enum)]
        quantity: Option<Quantity>,
        /// Comma-separated x values in (0, 1).
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        xs: Option<String>,
        /// Cap on the exponent range.
        #[arg(long, value_name = "N")]
        n_max: Option<u64>,
        /// Absolute tail tolerance for the x·S(x) summation.
        #[arg(long, value_name = "TOL")]
        tolerance: Option<f64>,
    },
    /// Checks on a weighted composition operator with linear-fractional symbol.
    Wco {
        #[command(flatten)]
        common: CommonArgs,
        /// Symbol coefficients a,b,c,d of (az+b)/(cz+d).
        #[arg(long, value_name = "A,B,C,D", allow_hyphen_values = true)]
        phi: Option<String>,
        /// Weight: one, kernel:p, bn:p[,c], or poly:c0,c1,...
        #[arg(long, value_name = "KIND")]
        weight_kind: Option<String>,
        /// Matrix section degree.
        #[arg(long, value_name = "D")]
        degree: Option<usize>,
        /// Which check to run.
        #[arg(long, value_enum)]
        check: Option<WcoCheck>,
        /// Orbit length for the orbit-frame check.
        #[arg(long, value_name = "N")]
        n_max: Option<usize>,
    },
    /// Checks on the model space of a finite Blaschke product.
    Model {
        #[command(flatten)]
        common: CommonArgs,
        /// Zeros as re,im[:mult] pairs, e.g. `0.3,0,0.5,0:2`.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        zeros: Option<String>,
        /// Truncation degree of the ambient polynomial space.
        #[arg(long, value_name = "N")]
        cutoff: Option<usize>,
        /// Which check to run.
        #[arg(long, value_enum)]
        check: Option<ModelCheck>,
        /// Random coordinate draws for the parseval check.
        #[arg(long, value_name = "K")]
        draws: Option<usize>,
    },
    /// Weighted interpolation on a disc sequence.
    Interp {
        #[command(flatten)]
        common: CommonArgs,
        /// JSON file with the interpolation problem.
        #[arg(long, value_name = "FILE")]
        problem: Option<PathBuf>,
        /// Overrides the degree recorded in the problem file.
        #[arg(long, value_name = "D")]
        degree: Option<usize>,
        /// Which check to run.
        #[arg(long, value_enum)]
        check: Option<InterpCheck>,
        /// Lower gate on the Carleson constant.
        #[arg(long, value_name = "DELTA")]
        delta_min: Option<f64>,
        /// Lower gate on the normalized weight-band ratio.
        #[arg(long, value_name = "R")]
        band_ratio_min: Option<f64>,
        /// Condition-number gate for the Riesz check.
        #[arg(long, value_name = "C")]
        condition_gate: Option<f64>,
    },
}

struct Resolved {
    spec: ExperimentSpec,
    out: Option<PathBuf>,
    format: OutputFormat,
    seed: Option<u64>,
    expect: Option<Expectation>,
}

fn load_config(path: &Path) -> Result<ConfigFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("config file {}: {e}", path.display()))
}

/// Combines `--config` with the flag-built spec: the two are mutually
/// exclusive, the config's experiment must match the subcommand, and
/// command-line output options override the config's.
fn finish(
    kind: &'static str,
    common: CommonArgs,
    flags_used: bool,
    build: impl FnOnce() -> Result<ExperimentSpec, String>,
    default_format: OutputFormat,
) -> Result<Resolved, String> {
    match &common.config {
        Some(path) => {
            if flags_used {
                return Err(
                    "--config cannot be combined with experiment flags; move them into the config file"
                        .to_string(),
                );
            }
            let file = load_config(path)?;
            if file.experiment.kind() != kind {
                return Err(format!(
                    "config file {} describes a `{}` experiment, but the `{kind}` subcommand was invoked",
                    path.display(),
                    file.experiment.kind()
                ));
            }
            Ok(Resolved {
                spec: file.experiment,
                out: common.out.or(file.out),
                format: common.format.or(file.format).unwrap_or(default_format),
                seed: common.seed.or(file.seed),
                expect: common.expect.or(file.expect),
            })
        }
        None => Ok(Resolved {
            spec: build()?,
            out: common.out,
            format: common.format.unwrap_or(default_format),
            seed: common.seed,
            expect: common.expect,
        }),
    }
}

fn resolve(command: Command) -> Result<Resolved, String> {
    match command {
        Command::Carleson {
            common,
            points,
            delta_min,
        } => {
            let flags_used = points.is_some() || delta_min.is_some();
            finish(
                "carleson",
                common,
                flags_used,
                move || {
                    let points = points.ok_or("either --config or --points is required")?;
                    Ok(ExperimentSpec::Carleson(CarlesonSpec {
                        points: parse_pairs(&points)?,
                        delta_min,
                    }))
                },
                OutputFormat::Csv,
            )
        }
        Command::FrameBounds {
            common,
            mus,
            weights,
            n_max,
            stride,
        } => {
            let flags_used =
                mus.is_some() || weights.is_some() || n_max.is_some() || stride.is_some();
            finish(
                "frame-bounds",
                common,
                flags_used,
                move || {
                    let mus = mus.ok_or("either --config or --mus is required")?;
                    let weights = weights.ok_or("either --config or --weights is required")?;
                    Ok(ExperimentSpec::FrameBounds(FrameBoundsSpec {
                        mus: parse_pairs(&mus)?,
                        weights: parse_pairs(&weights)?,
                        n_max,
                        stride,
                    }))
                },
                OutputFormat::Csv,
            )
        }
        Command::MuntzSweep {
            common,
            set,
            quantity,
            xs,
            n_max,
            tolerance,
        } => {
            let flags_used = set.is_some()
                || quantity.is_some()
                || xs.is_some()
                || n_max.is_some()
                || tolerance.is_some();
            finish(
                "muntz-sweep",
                common,
                flags_used,
                move || {
                    Ok(ExperimentSpec::MuntzSweep(MuntzSweepSpec {
                        set,
                        quantity,
                        xs: xs.as_deref().map(parse_f64_list).transpose()?,
                        n_max,
                        tolerance,
                    }))
                },
                OutputFormat::Csv,
            )
        }
        Command::Wco {
            common,
            phi,
            weight_kind,
            degree,
            check,
            n_max,
        } => {
            let flags_used = phi.is_some()
                || weight_kind.is_some()
                || degree.is_some()
                || check.is_some()
                || n_max.is_some();
            finish(
                "wco",
                common,
                flags_used,
                move || {
                    let phi = phi.ok_or("either --config or --phi is required")?;
                    let check = check.ok_or("either --config or --check is required")?;
                    Ok(ExperimentSpec::Wco(WcoSpec {
                        phi: parse_phi(&phi)?,
                        weight: weight_kind.as_deref().map(parse_weight_kind).transpose()?,
                        degree,
                        check,
                        n_max,
                    }))
                },
                OutputFormat::Json,
            )
        }
        Command::Model {
            common,
            zeros,
            cutoff,
            check,
            draws,
        } => {
            let flags_used =
                zeros.is_some() || cutoff.is_some() || check.is_some() || draws.is_some();
            finish(
                "model",
                common,
                flags_used,
                move || {
                    let zeros = zeros.ok_or("either --config or --zeros is required")?;
                    let check = check.ok_or("either --config or --check is required")?;
                    Ok(ExperimentSpec::Model(ModelSpec {
                        zeros: parse_zeros(&zeros)?,
                        cutoff,
                        check,
                        draws,
                    }))
                },
                OutputFormat::Json,
            )
        }
        Command::Interp {
            common,
            problem,
            degree,
            check,
            delta_min,
            band_ratio_min,
            condition_gate,
        } => {
            let flags_used = problem.is_some()
                || degree.is_some()
                || check.is_some()
                || delta_min.is_some()
                || band_ratio_min.is_some()
                || condition_gate.is_some();
            finish(
                "interp",
                common,
                flags_used,
                move || {
                    let path = problem.ok_or("either --config or --problem is required")?;
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| format!("cannot read problem file {}: {e}", path.display()))?;
                    let input: InterpolationProblemInput = serde_json::from_str(&text)
                        .map_err(|e| format!("problem file {}: {e}", path.display()))?;
                    Ok(ExperimentSpec::Interp(InterpSpec {
                        problem: input,
                        degree,
                        check,
                        delta_min,
                        band_ratio_min,
                        condition_gate,
                    }))
                },
                OutputFormat::Csv,
            )
        }
    }
}

/// Validates FRAMELAB_THREADS and returns the value recorded in metadata.
/// All computations are single-threaded today; the variable is accepted so
/// that callers can pin the setting in scripts, and recorded for
/// reproducibility.
fn resolve_threads() -> Result<String, String> {
    match std::env::var("FRAMELAB_THREADS") {
        Ok(raw) => {
            let n: u64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("FRAMELAB_THREADS must be a positive integer, got `{raw}`"))?;
            if n == 0 {
                return Err("FRAMELAB_THREADS must be a positive integer, got `0`".to_string());
            }
            Ok(n.to_string())
        }
        Err(std::env::VarError::NotPresent) => Ok("1".to_string()),
        Err(e) => Err(format!("FRAMELAB_THREADS is not readable: {e}")),
    }
}

fn run_resolved(resolved: Resolved) -> Result<i32, String> {
    let threads = resolve_threads()?;
    let body = experiments::run(&resolved.spec, resolved.seed)?;

    let mut full = Vec::with_capacity(body.meta.len() + 6);
    full.push(meta("tool", "framelab"));
    full.push(meta("version", env!("CARGO_PKG_VERSION")));
    full.push(meta("experiment", resolved.spec.kind()));
    full.extend(body.meta.clone());
    if let Some(seed) = resolved.seed {
        full.push(meta("seed", seed.to_string()));
        full.push(meta("prng", PRNG_ID));
    }
    full.push(meta("threads", threads));

    let report = report::Report { meta: full, ..body };
    let content = report::render(&report, resolved.format);
    report::write_out(resolved.out.as_deref(), &content)?;

    match resolved.expect {
        Some(Expectation::Pass) if !report.verdict => {
            eprintln!("expectation not met: declared pass, verdict is fail");
            Ok(EXIT_EXPECTATION)
        }
        Some(Expectation::Fail) if report.verdict => {
            eprintln!("expectation not met: declared fail, verdict is pass");
            Ok(EXIT_EXPECTATION)
        }
        _ => Ok(0),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = resolve(cli.command)
        .and_then(run_resolved)
        .unwrap_or_else(|msg| {
            eprintln!("error: {msg}");
            1
        });
    std::process::exit(code);
}
