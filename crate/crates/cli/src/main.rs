//! `framekit` — construct, analyze, optimize, and stress-test finite
//! unit-norm frames from the command line.
//!
//! Frames travel as plain-text `FRM1` files; reports are `key=value`
//! lines or CSV tables with full double precision, so identical
//! invocations produce byte-identical output.
//!
//! Exit codes: `0` success, `1` usage error, `2` numerical failure
//! (an algorithm could not complete), `3` validation failure (bad data).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use framekit_core::canonical::{canonical_tighten, verify_tighten_bound};
use framekit_core::constructions::{
    alltop_frame, difference_set_frame, harmonic_frame, paley_frame, random_uniform_tight,
    simplex_frame, skew_frame,
};
use framekit_core::erasure::condition_sweep;
use framekit_core::gabor::compare_lattices;
use framekit_core::optimizer::{minimize_max_correlation, OptimizerConfig};
use framekit_core::{etf_feasible, frm, welch_bound, Error, Field};

#[derive(Parser)]
#[command(
    name = "framekit",
    version,
    about = "Design and analysis of finite unit-norm frames",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an analytic or seeded-random frame and write it to a file.
    Construct(ConstructArgs),
    /// Print quality metrics of a stored frame as key=value lines.
    Analyze {
        /// Frame file (FRM1).
        file: PathBuf,
    },
    /// Print the Welch lower bound and equiangular feasibility for a shape.
    Welch {
        /// Ambient dimension.
        #[arg(long)]
        m: usize,
        /// Number of vectors.
        #[arg(long)]
        n: usize,
        /// Scalar field (R or C).
        #[arg(long, value_enum, ignore_case = true, default_value_t = FieldArg::C)]
        field: FieldArg,
    },
    /// Search numerically for a minimal-correlation frame.
    Optimize {
        /// Ambient dimension.
        #[arg(long)]
        m: usize,
        /// Number of vectors.
        #[arg(long)]
        n: usize,
        /// Scalar field (R or C).
        #[arg(long, value_enum, ignore_case = true)]
        field: FieldArg,
        /// Number of random restarts.
        #[arg(long)]
        restarts: Option<usize>,
        /// Seed for the random starting points.
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the best frame (FRM1).
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive erasure condition-number sweeps over a stored frame.
    Erasures {
        /// Frame file (FRM1).
        file: PathBuf,
        /// Comma-separated erasure counts, e.g. `1,2,3,4`.
        #[arg(long)]
        e: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Replace a frame by its canonical tight version and report the
    /// correlation penalty bound.
    Tighten {
        /// Frame file (FRM1).
        file: PathBuf,
        /// Where to write the tightened frame (FRM1).
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare hexagonal and square time-frequency lattices.
    Gabor {
        /// Comma-separated lattice densities.
        #[arg(long = "rho-list", default_value = "0.5,1,2,4")]
        rho_list: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// Which construction to run.
    #[arg(long, value_enum)]
    kind: Kind,
    /// Ambient dimension (meaning depends on the kind).
    #[arg(long)]
    m: Option<usize>,
    /// Number of vectors (meaning depends on the kind).
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated frequency rows for `harmonic`, e.g. `0,1,2`.
    #[arg(long)]
    rows: Option<String>,
    /// Difference set for `diffset` as `modulus:r1,r2,...`, e.g. `7:1,2,4`.
    #[arg(long)]
    dset: Option<String>,
    /// Seed for `random`.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// For `alltop`: append the standard basis to the cubic-phase system.
    #[arg(long)]
    append_onb: bool,
    /// Where to write the frame (FRM1).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    Simplex,
    Paley,
    Skew,
    Alltop,
    Harmonic,
    Diffset,
    Random,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "UPPER")]
enum FieldArg {
    R,
    C,
}

impl From<FieldArg> for Field {
    fn from(arg: FieldArg) -> Field {
        match arg {
            FieldArg::R => Field::Real,
            FieldArg::C => Field::Complex,
        }
    }
}

/// Anything that can go wrong after argument parsing.
enum CliError {
    /// Arguments parsed but do not make sense together.
    Usage(String),
    /// The core library rejected the request.
    Core(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(err) => {
                if err.is_numerical() {
                    2
                } else {
                    3
                }
            }
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Core(err) => write!(f, "{err}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Construct(args) => construct(args),
        Command::Analyze { file } => analyze(&file),
        Command::Welch { m, n, field } => welch(m, n, field.into()),
        Command::Optimize {
            m,
            n,
            field,
            restarts,
            seed,
            out,
        } => optimize(m, n, field.into(), restarts, seed, &out),
        Command::Erasures { file, e, csv } => erasures(&file, &e, csv.as_deref()),
        Command::Tighten { file, out } => tighten(&file, &out),
        Command::Gabor { rho_list, csv } => gabor(&rho_list, csv.as_deref()),
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| CliError::Usage(format!("cannot parse {what} entry `{s}`")))
        })
        .collect()
}

fn require(value: Option<usize>, flag: &str, kind: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --kind {kind}")))
}

/// Rejects an explicitly given shape option that contradicts the
/// construction's own arithmetic.
fn check_shape(given: Option<usize>, expected: usize, flag: &str) -> Result<(), CliError> {
    match given {
        Some(value) if value != expected => Err(CliError::Usage(format!(
            "--{flag} {value} contradicts the requested construction (expected {expected})"
        ))),
        _ => Ok(()),
    }
}

fn construct(args: ConstructArgs) -> Result<(), CliError> {
    let frame = match args.kind {
        Kind::Simplex => {
            let m = require(args.m, "m", "simplex")?;
            check_shape(args.n, m + 1, "n")?;
            simplex_frame(m)?
        }
        Kind::Paley => {
            let n = require(args.n, "n", "paley")?;
            check_shape(args.m, n / 2, "m")?;
            paley_frame(n)?
        }
        Kind::Skew => {
            let n = require(args.n, "n", "skew")?;
            check_shape(args.m, n / 2, "m")?;
            skew_frame(n)?
        }
        Kind::Alltop => {
            let m = require(args.m, "m", "alltop")?;
            let count = if args.append_onb { m * m + m } else { m * m };
            check_shape(args.n, count, "n")?;
            alltop_frame(m, args.append_onb)?
        }
        Kind::Harmonic => {
            let m = require(args.m, "m", "harmonic")?;
            let n = require(args.n, "n", "harmonic")?;
            let rows = match &args.rows {
                Some(text) => parse_list::<usize>(text, "--rows")?,
                None => (0..m).collect(),
            };
            harmonic_frame(m, n, &rows)?
        }
        Kind::Diffset => {
            let spec = args
                .dset
                .as_deref()
                .ok_or_else(|| CliError::Usage("--dset is required for --kind diffset".into()))?;
            let (modulus_text, residue_text) = spec.split_once(':').ok_or_else(|| {
                CliError::Usage("--dset must look like `modulus:r1,r2,...`, e.g. `7:1,2,4`".into())
            })?;
            let modulus: usize = modulus_text.trim().parse().map_err(|_| {
                CliError::Usage(format!("cannot parse --dset modulus `{modulus_text}`"))
            })?;
            let residues = parse_list::<usize>(residue_text, "--dset")?;
            check_shape(args.n, modulus, "n")?;
            check_shape(args.m, residues.len(), "m")?;
            difference_set_frame(modulus, &residues)?
        }
        Kind::Random => {
            let m = require(args.m, "m", "random")?;
            let n = require(args.n, "n", "random")?;
            random_uniform_tight(m, n, args.seed)?
        }
    };
    frm::save(&frame, &args.out)?;
    println!("out={}", args.out.display());
    println!("dim={}", frame.dim());
    println!("count={}", frame.count());
    println!("field={}", frame.field().tag());
    Ok(())
}

fn analyze(file: &Path) -> Result<(), CliError> {
    let loaded = frm::load(file)?;
    let metrics = loaded.frame.metrics()?;
    println!("dim={}", metrics.dim);
    println!("count={}", metrics.count);
    println!("field={}", metrics.field.tag());
    println!("normalized_on_load={}", loaded.normalized);
    println!("lower_bound={:.16e}", metrics.lower_bound);
    println!("upper_bound={:.16e}", metrics.upper_bound);
    println!("tight={}", metrics.tight);
    println!("equiangular={}", metrics.equiangular);
    println!("correlation_level={:.16e}", metrics.correlation_level);
    println!("max_correlation={:.16e}", metrics.max_correlation);
    println!("welch_bound={:.16e}", metrics.welch_bound);
    println!("welch_gap={:.16e}", metrics.welch_gap);
    println!("achieves_welch={}", metrics.achieves_welch);
    println!("redundancy={:.16e}", metrics.redundancy);
    Ok(())
}

fn welch(m: usize, n: usize, field: Field) -> Result<(), CliError> {
    let bound = welch_bound(m, n)?;
    println!("welch_bound={bound:.16e}");
    println!("etf_feasible={}", etf_feasible(m, n, field));
    Ok(())
}

fn optimize(
    m: usize,
    n: usize,
    field: Field,
    restarts: Option<usize>,
    seed: Option<u64>,
    out: &Path,
) -> Result<(), CliError> {
    let mut cfg = OptimizerConfig::default();
    if let Some(restarts) = restarts {
        cfg.restarts = restarts;
    }
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let result = minimize_max_correlation(m, n, field, &cfg)?;
    frm::save(&result.frame, out)?;
    println!("out={}", out.display());
    println!("achieved={:.16e}", result.achieved);
    println!("welch_bound={:.16e}", result.welch);
    println!("gap={:.16e}", result.gap);
    println!("converged={}", result.converged);
    println!("restarts_used={}", result.restarts_used);
    println!("best_restart={}", result.best_restart);
    Ok(())
}

fn emit(table: String, csv: Option<&Path>) -> Result<(), CliError> {
    match csv {
        Some(path) => {
            std::fs::write(path, table).map_err(Error::from)?;
        }
        None => print!("{table}"),
    }
    Ok(())
}

fn erasures(file: &Path, e_list: &str, csv: Option<&Path>) -> Result<(), CliError> {
    let loaded = frm::load(file)?;
    let counts = parse_list::<usize>(e_list, "--e")?;
    if counts.is_empty() {
        return Err(CliError::Usage("--e needs at least one erasure count".into()));
    }
    let mut table = String::from("e,pattern_count,mean_cond,max_cond,failures\n");
    for e in counts {
        let report = condition_sweep(&loaded.frame, e)?;
        let _ = writeln!(
            table,
            "{},{},{:.16e},{:.16e},{}",
            report.erasure_count,
            report.pattern_count,
            report.mean_cond,
            report.max_cond,
            report.failures
        );
    }
    emit(table, csv)
}

fn tighten(file: &Path, out: &Path) -> Result<(), CliError> {
    let loaded = frm::load(file)?;
    let report = verify_tighten_bound(&loaded.frame)?;
    let tightened = canonical_tighten(&loaded.frame)?;
    frm::save(&tightened.frame, out)?;
    println!("out={}", out.display());
    println!("original_max_correlation={:.16e}", report.original_max_correlation);
    println!("tightened_max_correlation={:.16e}", report.lhs);
    println!("penalty={:.16e}", report.penalty);
    println!("bound={:.16e}", report.rhs);
    println!("uniformity_residual={:.16e}", report.uniformity_residual);
    println!("uniform_after={}", report.uniform_after);
    println!(
        "tightness_residual={:.16e}",
        tightened.frame.tightness_residual()
    );
    Ok(())
}

fn gabor(rho_list: &str, csv: Option<&Path>) -> Result<(), CliError> {
    let rhos = parse_list::<f64>(rho_list, "--rho-list")?;
    if rhos.is_empty() {
        return Err(CliError::Usage(
            "--rho-list needs at least one density".into(),
        ));
    }
    let mut table = String::from("rho,hex_d2,hex_correlation,square_d2,square_correlation\n");
    for rho in rhos {
        let cmp = compare_lattices(rho)?;
        let _ = writeln!(
            table,
            "{},{:.16e},{:.16e},{:.16e},{:.16e}",
            rho,
            cmp.hexagonal.min_distance.powi(2),
            cmp.hexagonal.max_correlation,
            cmp.square.min_distance.powi(2),
            cmp.square.max_correlation
        );
    }
    emit(table, csv)
}
