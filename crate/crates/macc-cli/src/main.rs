//! `macc`: construct, validate, and simulate cyclic placement delivery
//! arrays, and compare the scheme family at a configuration or across a
//! sweep.
//!
//! Exit codes: 0 success, 1 failed validation or decoding, 2 parameter
//! errors, 3 I/O and format errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use macc::construct::PdaDescriptor;
use macc::pda::Pda;
use macc::schemes::{self, ComparePoint, SchemeRegistry};
use macc::sim;
use macc::{ParamError, SchemeParams};

#[derive(Parser)]
#[command(name = "macc", version, about = "Cyclic placement delivery arrays for multi-access caching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PointArgs {
    /// Number of users (and caches) on the ring
    #[arg(long = "K")]
    users: usize,
    /// Consecutive sub-files of each file stored per cache
    #[arg(long = "k")]
    subfiles_per_cache: usize,
    /// Neighboring caches each user reads
    #[arg(long = "L")]
    caches_per_user: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build the delivery array and write it in the grid text format
    Construct {
        #[command(flatten)]
        point: PointArgs,
        /// Write the grid here instead of stdout (the JSON summary then goes
        /// to stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a grid file and print the report as JSON
    Validate {
        /// Grid in the text format
        input: PathBuf,
    },
    /// Run placement, delivery, and per-user decoding; print the report as JSON
    Simulate {
        #[command(flatten)]
        point: PointArgs,
        /// Number of files in the library
        #[arg(long = "N")]
        files: usize,
        /// Bytes per sub-file
        #[arg(long = "subfile-size")]
        subfile_size: usize,
        /// Seed for the library and demand generator
        #[arg(long)]
        seed: u64,
        /// Comma-separated demand vector of length K (seeded random if omitted)
        #[arg(long)]
        demands: Option<String>,
    },
    /// Evaluate every registered scheme at one configuration
    Compare {
        #[command(flatten)]
        point: PointArgs,
        /// Restrict the output to one scheme by registry name
        #[arg(long)]
        scheme: Option<String>,
    },
    /// Evaluate all admissible configurations for a user count and emit CSV
    Sweep {
        /// Number of users (and caches) on the ring
        #[arg(long = "K")]
        users: usize,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the table as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

enum CliError {
    /// A validation or decode verdict of "no" (exit 1).
    Verdict,
    /// Bad parameters or demands (exit 2).
    Parameter(String),
    /// I/O or format trouble (exit 3).
    Io(String),
}

impl From<ParamError> for CliError {
    fn from(err: ParamError) -> Self {
        CliError::Parameter(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verdict) => ExitCode::from(1),
        Err(CliError::Parameter(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Io(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Construct { point, out } => construct(point, out),
        Command::Validate { input } => validate(input),
        Command::Simulate { point, files, subfile_size, seed, demands } => {
            simulate(point, files, subfile_size, seed, demands)
        }
        Command::Compare { point, scheme } => compare(point, scheme),
        Command::Sweep { users, out, json } => sweep(users, out, json),
    }
}

fn construct(point: PointArgs, out: Option<PathBuf>) -> Result<(), CliError> {
    let params = SchemeParams::for_construction(
        point.users,
        point.subfiles_per_cache,
        point.caches_per_user,
    )?;
    let grid = macc::construct::construct_from(&params);
    let descriptor = PdaDescriptor::from_params(&params);
    let summary = serde_json::to_string(&descriptor).expect("descriptor serializes");
    match out {
        Some(path) => {
            fs::write(&path, grid.to_string())?;
            println!("{summary}");
        }
        None => {
            print!("{grid}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn validate(input: PathBuf) -> Result<(), CliError> {
    let text = fs::read_to_string(&input)?;
    let grid: Pda = text.parse().map_err(|err| CliError::Io(format!("{}: {err}", input.display())))?;
    let report = grid.validate();
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if report.is_pda {
        Ok(())
    } else {
        Err(CliError::Verdict)
    }
}

fn simulate(
    point: PointArgs,
    files: usize,
    subfile_size: usize,
    seed: u64,
    demands: Option<String>,
) -> Result<(), CliError> {
    if subfile_size == 0 {
        return Err(CliError::Parameter("subfile-size must be positive".into()));
    }
    let demands = demands
        .map(|list| {
            list.split(',')
                .map(|token| token.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Parameter(format!("bad demand list {list:?}")))
        })
        .transpose()?;
    let result = match demands {
        Some(demands) => sim::simulate_with_demands(
            point.users,
            point.subfiles_per_cache,
            point.caches_per_user,
            files,
            subfile_size,
            seed,
            demands,
        ),
        None => sim::simulate(
            point.users,
            point.subfiles_per_cache,
            point.caches_per_user,
            files,
            subfile_size,
            seed,
        ),
    };
    let report = result.map_err(|err| match err {
        sim::SimError::Param(param) => CliError::Parameter(param.to_string()),
        sim::SimError::DemandLength { .. } | sim::SimError::DemandOutOfRange { .. } => {
            CliError::Parameter(err.to_string())
        }
        other => CliError::Io(other.to_string()),
    })?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if report.all_decoded() {
        Ok(())
    } else {
        Err(CliError::Verdict)
    }
}

fn compare(point: PointArgs, scheme: Option<String>) -> Result<(), CliError> {
    let point =
        ComparePoint::classify(point.users, point.subfiles_per_cache, point.caches_per_user)?;
    let registry = SchemeRegistry::standard();
    let rows = match scheme {
        Some(name) => {
            let scheme = registry
                .get(&name)
                .ok_or_else(|| CliError::Parameter(format!("unknown scheme {name:?}")))?;
            vec![scheme.evaluate(&point)]
        }
        None => registry.evaluate_all(&point),
    };
    println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
    Ok(())
}

fn sweep(users: usize, out: Option<PathBuf>, json: Option<PathBuf>) -> Result<(), CliError> {
    if users < 2 {
        return Err(CliError::Parameter("a sweep needs at least two users".into()));
    }
    let table = schemes::sweep(users);
    if let Some(path) = json {
        fs::write(&path, serde_json::to_string_pretty(&table).expect("table serializes"))?;
    }
    match out {
        Some(path) => fs::write(&path, table.to_csv())?,
        None => print!("{}", table.to_csv()),
    }
    Ok(())
}
