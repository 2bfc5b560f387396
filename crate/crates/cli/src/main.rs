use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

/// Minimum-cost prefix codes for equally likely words over letters of
/// unequal length.
#[derive(Debug, Parser)]
#[command(name = "prefixcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find an optimal code for the given letter lengths and word count.
    Solve(SolveArgs),
    /// Encode symbol indices with a solved code document.
    Encode(CodecArgs),
    /// Decode a letter stream with a solved code document.
    Decode(CodecArgs),
    /// Time the engine against the full-terminal-set baseline.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Comma-separated letter lengths: integers, decimals or fractions (1/2).
    #[arg(long, allow_hyphen_values = true)]
    pub costs: String,
    /// Number of codewords.
    #[arg(short = 'n', long = "words")]
    pub n: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Print the cost of every proper tree of the scan.
    #[arg(long)]
    pub trace: bool,
    /// Stop scanning at the first tree that is no cheaper than its predecessor.
    #[arg(long)]
    pub early_stop: bool,
    /// Cross-check the optimum with exhaustive search (small instances only).
    #[arg(long)]
    pub verify_oracle: bool,
    /// Node budget for --verify-oracle.
    #[arg(long, default_value_t = 10_000_000)]
    pub oracle_budget: u64,
    /// Include the optimal tree's non-terminals and terminals.
    #[arg(long)]
    pub emit_tree: bool,
    /// Comma-separated glyph per letter for text output, e.g. ".,_".
    #[arg(long)]
    pub glyphs: Option<String>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CodecArgs {
    /// JSON document written by `solve --format json`.
    #[arg(long)]
    pub code: PathBuf,
    /// Comma-separated glyph per letter; letters are numbers otherwise.
    #[arg(long)]
    pub glyphs: Option<String>,
    /// Input; read from stdin when omitted.
    pub input: Vec<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated letter lengths.
    #[arg(long, conflicts_with = "random_letters")]
    pub costs: Option<String>,
    /// Draw this many letter lengths uniformly from 1..=--max-cost.
    #[arg(long)]
    pub random_letters: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub max_cost: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Word count, or a range `A..B` sampled at --points log-spaced values.
    #[arg(short = 'n', long = "words")]
    pub n: String,
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => commands::run_solve(&args),
        Command::Encode(args) => commands::run_codec(&args, commands::Direction::Encode),
        Command::Decode(args) => commands::run_codec(&args, commands::Direction::Decode),
        Command::Bench(args) => commands::run_bench(&args),
    };
    match result {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(output.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::OracleMismatch { report, detail }) => {
            print!("{report}");
            eprintln!("error: {detail}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
