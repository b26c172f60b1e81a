use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use nilrf::commands::{self, DivisibilityArgs, Family};
use nilrf::{CliError, CliResult, GroupFile, Report};
use nilrf_core::certify::SearchOptions;
use nilrf_core::group::DEFAULT_BALL_BUDGET;
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "nilrf", version, about = "Certified residual finiteness growth of two-step nilpotent groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for randomized heuristics.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel searches (0 uses every CPU).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Leave timings out of reports so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Print the machine-readable form on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the machine-readable form to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the growth exponent interval of a group.
    Analyze {
        file: PathBuf,
        /// Height bound for candidate vectors v.
        #[arg(long, default_value_t = 5)]
        height: u64,
        /// Random sample points for centers of rank 3 or more.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Number of primes scanned for good bases.
        #[arg(long, default_value_t = 50)]
        prime_scan: usize,
    },
    /// Divisibility of the central element (0, v).
    Divisibility {
        file: PathBuf,
        /// Comma-separated coordinates of v.
        #[arg(allow_hyphen_values = true)]
        v: String,
        /// Cross-check with the sublattice oracle up to this index.
        #[arg(long)]
        oracle_bound: Option<u64>,
        /// Comma-separated primes for the p^(1+rank) upper bound.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Write the group file of a named family.
    Construct {
        #[command(subcommand)]
        family: FamilyArg,
    },
    /// Maximum divisibility over balls of radius 1..=r_max.
    Profile {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
    },
    /// Re-check every certificate in a report.
    Verify { report: PathBuf },
}

#[derive(Subcommand)]
enum FamilyArg {
    /// H3(Z).
    Heisenberg,
    /// The Heisenberg group over Z[i].
    Gaussian,
    /// The rank-4 single-matrix quotient of the Gaussian Heisenberg group.
    GaussianQuotient,
    /// Direct sum of copies of H3(Z).
    Sum {
        #[arg(long, default_value_t = 2)]
        count: usize,
    },
    /// Galois-twisted group over Q(sqrt(D)).
    Galois {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Random block pencil in two center variables (uses --seed).
    Pencil {
        #[arg(long, default_value_t = 4)]
        max_blocks: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
}

fn parse_vector(s: &str) -> CliResult<Vec<BigInt>> {
    s.split(',')
        .map(|t| BigInt::from_str(t.trim()).map_err(|_| CliError::Usage(format!("`{t}` in v is not an integer"))))
        .collect()
}

fn budget() -> CliResult<usize> {
    match std::env::var("NILRF_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("NILRF_BUDGET=`{s}` is not a count"))),
        Err(_) => Ok(DEFAULT_BALL_BUDGET),
    }
}

fn write_out(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, format!("{text}\n")).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Prints text or JSON per the global flags and writes `--out` if given.
fn emit(g: &Global, text: &str, json: &str) -> CliResult<()> {
    if let Some(path) = &g.out {
        write_out(path, json)?;
    }
    if g.json {
        println!("{json}");
    } else {
        print!("{text}");
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let g = &cli.global;
    let timing = !g.no_timing;
    match cli.command {
        Command::Analyze { file, height, samples, prime_scan } => {
            let group = GroupFile::read(&file)?;
            let opts = SearchOptions { height, seed: g.seed, samples, prime_scan, ..SearchOptions::default() };
            let a = commands::with_jobs(g.jobs, || commands::analyze(&group, &opts, timing))??;
            emit(g, &commands::analysis_text(&a), &a.report.to_json())
        }
        Command::Divisibility { file, v, oracle_bound, primes } => {
            let group = GroupFile::read(&file)?;
            let args = DivisibilityArgs { v: parse_vector(&v)?, oracle_bound, primes };
            let r = commands::divisibility(&group, &args, timing)?;
            emit(g, &commands::divisibility_text(&r), &r.to_json())
        }
        Command::Construct { family } => {
            let family = match family {
                FamilyArg::Heisenberg => Family::Heisenberg,
                FamilyArg::Gaussian => Family::Gaussian,
                FamilyArg::GaussianQuotient => Family::GaussianQuotient,
                FamilyArg::Sum { count } => Family::Sum { count },
                FamilyArg::Galois { disc } => Family::Galois { disc },
                FamilyArg::Pencil { max_blocks, max_k } => Family::Pencil { seed: g.seed, max_blocks, max_k },
            };
            let file = commands::construct(&family)?;
            let json = file.to_pretty();
            emit(g, &format!("{json}\n"), &json)
        }
        Command::Profile { file, r_max } => {
            let pres = GroupFile::read(&file)?.presentation()?;
            let rows = commands::profile(&pres, r_max, budget()?)?;
            emit(g, &commands::profile_text(&rows), &commands::profile_json(&rows))
        }
        Command::Verify { report } => {
            let text = std::fs::read_to_string(&report).map_err(|source| CliError::Io { path: report.clone(), source })?;
            let r: Report = serde_json::from_str(&text).map_err(|e| CliError::Parse {
                path: report.clone(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            r.verify()?;
            println!("ok: {} report for {} verified", kind(&r), r.group.name.as_deref().unwrap_or("(unnamed)"));
            Ok(())
        }
    }
}

fn kind(r: &Report) -> &'static str {
    match r.result {
        nilrf::report::ReportBody::Analyze(_) => "analyze",
        nilrf::report::ReportBody::Divisibility(_) => "divisibility",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nilrf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
