//! `phasemask` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 numerical error (singular or rank-deficient input).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "phasemask", version, about = "Structured inverses of Hadamard products with angle matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a random matrix file (complex standard normal, or uniform phases with --angle).
    Gen {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        seed: u64,
        /// Generate an angle matrix instead of a dense one.
        #[arg(long)]
        angle: bool,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the structured and LU determinants of A∘Θ and their difference.
    Det {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        angle: PathBuf,
    },
    /// Structured inverse (A∘Θ)⁻¹ = A⁻¹∘Θ^H.
    Inv(SolveArgs),
    /// Structured pseudoinverse (A∘Θ)⁺ = A⁺∘Θ^H.
    Pinv(SolveArgs),
    /// Run randomized verification suites and write a JSON report.
    Verify {
        /// lemma1 | lemma2 | lemma3 | thm1 | thm2 | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Trials per suite; each suite's default when omitted.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time structured vs naive updates and append one CSV row.
    Bench {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        updates: usize,
        #[arg(long)]
        seed: u64,
        /// CSV file to append to (header written on creation); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest accepted dimension.
        #[arg(long, default_value_t = phasemask_core::engine::DEFAULT_DIMENSION_CAP)]
        cap: usize,
    },
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    /// Dense matrix file for A.
    #[arg(long)]
    matrix: PathBuf,
    /// Angle matrix file for Θ.
    #[arg(long)]
    angle: PathBuf,
    /// Output path for the structured result.
    #[arg(long)]
    out: PathBuf,
    /// Also compute the naive result and report residuals.
    #[arg(long)]
    oracle: bool,
    /// Where to write the naive result; defaults to `<out stem>.oracle.json`.
    #[arg(long, requires = "oracle")]
    oracle_out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            rows,
            cols,
            seed,
            angle,
            out,
        } => commands::generate(rows, cols, seed, angle, out.as_deref()),
        Command::Det { matrix, angle } => commands::determinant(&matrix, &angle),
        Command::Inv(args) => commands::solve(
            commands::SolveKind::Inverse,
            &args.matrix,
            &args.angle,
            &args.out,
            args.oracle.then(|| commands::oracle_path(&args.out, args.oracle_out.as_deref())),
        ),
        Command::Pinv(args) => commands::solve(
            commands::SolveKind::Pseudoinverse,
            &args.matrix,
            &args.angle,
            &args.out,
            args.oracle.then(|| commands::oracle_path(&args.out, args.oracle_out.as_deref())),
        ),
        Command::Verify {
            suite,
            trials,
            seed,
            out,
        } => commands::verify(&suite, trials, seed, out.as_deref()),
        Command::Bench {
            rows,
            cols,
            updates,
            seed,
            out,
            cap,
        } => commands::bench(rows, cols, updates, seed, cap, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
