//! `polyasym`: exact generalized Bernoulli/Euler polynomial values and their
//! large-degree approximations, from the command line.
//!
//! Subcommands: `eval` (one value by one method), `compare` (methods against
//! the exact oracle over a degree range), `coeffs` (coefficient tables), and
//! `report` (config-driven sweep bundles). Exit codes: 0 success, 2 usage
//! error, 3 domain/precondition error, 4 I/O error.

mod output;
mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyasym::{Family, Method};

use crate::output::OutputFormat;
use crate::run::CliError;

#[derive(Parser)]
#[command(
    name = "polyasym",
    version,
    about = "Generalized Bernoulli and Euler polynomials: exact values and large-degree approximations",
    after_help = "The default working precision is 256 bits; override with --precision or POLYASYM_PRECISION."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate B_n^mu(z) or E_n^mu(z) with one method.
    Eval(EvalArgs),
    /// Compare methods against the exact oracle over a degree range.
    Compare(CompareArgs),
    /// Print a coefficient table (loop, two-point, or residue-sum).
    Coeffs(CoeffsArgs),
    /// Run the sweeps declared in a config file into an output directory.
    Report(ReportArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Polynomial family: bernoulli or euler.
    #[arg(value_name = "FAMILY")]
    family: Option<String>,
    /// Polynomial family (alternative to the positional form).
    #[arg(long = "family", value_name = "FAMILY")]
    family_flag: Option<String>,
    /// Degree n.
    #[arg(long)]
    n: u32,
    /// Order mu: rational (1/2), decimal (0.5), or complex (1.5+0.25i).
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Argument z, same formats as --mu.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Method: oracle, finite-sum, fourier, watson, twopoint, twopoint-tilde, or saddle.
    #[arg(long)]
    method: String,
    /// Highest retained term index K (defaults: fourier 16, watson 3, twopoint 12).
    #[arg(long)]
    terms: Option<u32>,
    /// Working precision in bits (64 to 2^20).
    #[arg(long)]
    precision: Option<u32>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Polynomial family: bernoulli or euler.
    #[arg(value_name = "FAMILY")]
    family: Option<String>,
    /// Polynomial family (alternative to the positional form).
    #[arg(long = "family", value_name = "FAMILY")]
    family_flag: Option<String>,
    /// Single degree n (alternative to --n-range).
    #[arg(long)]
    n: Option<u32>,
    /// Inclusive degree range A:B:step.
    #[arg(long = "n-range", value_name = "A:B:STEP")]
    n_range: Option<String>,
    /// Order mu: rational, decimal, or complex.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Argument z, same formats as --mu.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Comma-separated method list, e.g. finite-sum,fourier,saddle.
    #[arg(long)]
    methods: String,
    /// Highest retained term index K (method-specific default).
    #[arg(long)]
    terms: Option<u32>,
    /// Working precision in bits (64 to 2^20).
    #[arg(long)]
    precision: Option<u32>,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Polynomial family: bernoulli or euler.
    #[arg(value_name = "FAMILY")]
    family: Option<String>,
    /// Polynomial family (alternative to the positional form).
    #[arg(long = "family", value_name = "FAMILY")]
    family_flag: Option<String>,
    /// Coefficient kind: g, h, alpha, beta, gamma, delta, beta-residue, or epsilon.
    #[arg(long)]
    kind: String,
    /// Order mu (beta-residue and epsilon need a positive integer m).
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Argument z.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    z: String,
    /// Degree n (needed by beta-residue and epsilon).
    #[arg(long)]
    n: Option<u32>,
    /// Highest coefficient index K; rows run k = 0..=K.
    #[arg(long, default_value_t = 8)]
    terms: u32,
    /// Working precision in bits (64 to 2^20).
    #[arg(long)]
    precision: Option<u32>,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Path to the sweep config file.
    #[arg(value_name = "CONFIG")]
    config: PathBuf,
    /// Output directory for the manifest and the per-method CSV files.
    #[arg(long)]
    out: PathBuf,
}

fn resolve_family(positional: Option<&str>, flag: Option<&str>) -> Result<Family, CliError> {
    let raw = match (positional, flag) {
        (Some(p), Some(f)) => {
            if p.eq_ignore_ascii_case(f) {
                p
            } else {
                return Err(CliError::Usage(format!(
                    "conflicting family given twice: '{p}' and '{f}'"
                )));
            }
        }
        (Some(p), None) => p,
        (None, Some(f)) => f,
        (None, None) => {
            return Err(CliError::Usage(
                "missing family: pass it positionally (e.g. 'eval bernoulli ...') or via --family"
                    .to_string(),
            ));
        }
    };
    raw.parse::<Family>().map_err(CliError::Usage)
}

fn resolve_ns(n: Option<u32>, range: Option<&str>) -> Result<Vec<u32>, CliError> {
    match (n, range) {
        (Some(_), Some(_)) => {
            Err(CliError::Usage("--n and --n-range are mutually exclusive".to_string()))
        }
        (Some(v), None) => Ok(vec![v]),
        (None, Some(r)) => run::parse_n_range(r),
        (None, None) => Err(CliError::Usage("one of --n or --n-range is required".to_string())),
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval(args) => {
            let family = resolve_family(args.family.as_deref(), args.family_flag.as_deref())?;
            let method: Method = args.method.parse().map_err(CliError::Usage)?;
            let precision = run::resolve_precision(args.precision)?;
            let mu = run::parse_param("mu", &args.mu, precision)?;
            let z = run::parse_param("z", &args.z, precision)?;
            let table = run::eval_table(family, method, args.n, &mu, &z, args.terms, precision)?;
            output::emit(&table.render(args.format), args.out.as_deref())
        }
        Command::Compare(args) => {
            let family = resolve_family(args.family.as_deref(), args.family_flag.as_deref())?;
            let methods = run::parse_methods(&args.methods)?;
            let ns = resolve_ns(args.n, args.n_range.as_deref())?;
            let precision = run::resolve_precision(args.precision)?;
            let mu = run::parse_param("mu", &args.mu, precision)?;
            let z = run::parse_param("z", &args.z, precision)?;
            let table =
                run::compare_table(family, &ns, &mu, &z, &methods, args.terms, precision)?;
            output::emit(&table.render(args.format), args.out.as_deref())
        }
        Command::Coeffs(args) => {
            let family = resolve_family(args.family.as_deref(), args.family_flag.as_deref())?;
            let kind: run::CoeffKind = args.kind.parse().map_err(CliError::Usage)?;
            let precision = run::resolve_precision(args.precision)?;
            let mu = run::parse_param("mu", &args.mu, precision)?;
            let z = run::parse_param("z", &args.z, precision)?;
            let table =
                run::coeffs_table(family, kind, &mu, &z, args.n, args.terms, precision)?;
            output::emit(&table.render(args.format), args.out.as_deref())
        }
        Command::Report(args) => {
            let summary = report::run_report(&args.config, &args.out)?;
            println!("{summary}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
