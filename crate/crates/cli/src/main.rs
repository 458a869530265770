use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use coxlab_cli::{
    construct, load_records, multiplicity, parse_records, star_search, table_m, verify_all, ExitStatus, Format, Report,
    SetupRecord, VerifyOptions,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "coxlab", version, about = "Twisted Coxeter combinatorics and lemma sweeps")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads for the sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Record file, or a directory of record files.
    path: Option<PathBuf>,
    /// Inline record; fields separated by `;`.
    #[arg(long, conflicts_with = "path")]
    setup: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print M for every type and twist up to rank 8.
    TableM,
    /// Construct I for each setup and check its properties.
    Construct(Input),
    /// Run every sweep.
    VerifyAll {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long)]
        q: Option<i64>,
        /// Seed for the randomized Smith-form checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Character groups above this order are not enumerated.
        #[arg(long, default_value_t = 10_000)]
        max_group_order: u128,
        #[arg(long, hide = true)]
        inject_bad_sequence: bool,
    },
    /// Count w in W_e^F with w(chi) = chi'.
    Multiplicity {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        q: Option<i64>,
        /// Residues of chi, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        /// Residues of chi'; defaults to chi.
        #[arg(long, allow_hyphen_values = true)]
        chi_prime: Option<String>,
    },
    /// Search for a twisted Coxeter element satisfying (*).
    StarSearch(Input),
}

fn records(input: &Input) -> Result<Vec<SetupRecord>, String> {
    match (&input.path, &input.setup) {
        (Some(p), _) => load_records(p).map_err(|e| e.to_string()),
        (None, Some(s)) => parse_records(s, "<inline>").map_err(|e| e.to_string()),
        (None, None) => Err("give a record file, a directory, or --setup".into()),
    }
}

fn input_error(command: &str, message: String) -> Report {
    Report::new(command, ExitStatus::InputError, json!({ "error": message }))
}

fn run(cli: &Cli) -> Report {
    match &cli.command {
        Command::TableM => table_m(),
        Command::Construct(input) => match records(input) {
            Ok(r) => construct(&r),
            Err(e) => input_error("construct", e),
        },
        Command::StarSearch(input) => match records(input) {
            Ok(r) => star_search(&r),
            Err(e) => input_error("star-search", e),
        },
        Command::Multiplicity { input, q, chi, chi_prime } => match records(input) {
            Ok(r) if r.len() == 1 => multiplicity(&r[0], *q, chi, chi_prime.as_deref()),
            Ok(r) => input_error("multiplicity", format!("expected one setup, got {}", r.len())),
            Err(e) => input_error("multiplicity", e),
        },
        Command::VerifyAll { max_rank, q, seed, max_group_order, inject_bad_sequence } => verify_all(&VerifyOptions {
            max_rank: *max_rank,
            q: *q,
            max_group_order: *max_group_order,
            seed: *seed,
            inject_bad_sequence: *inject_bad_sequence,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("cannot set up {j} worker threads: {e}");
            return ExitCode::from(ExitStatus::InputError.code() as u8);
        }
    }
    let report = run(&cli);
    print!("{}", report.render(cli.format));
    ExitCode::from(report.status.code() as u8)
}
