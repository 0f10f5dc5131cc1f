use std::io::{self, IsTerminal};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use coquat::acceptance::run_all;
use coquat::bench::{bench_pow, CrossCheck, DEFAULT_N_VALUES, DEFAULT_REPS, DEFAULT_SEED};
use coquat::calc::{evaluate, render_json, render_json_error, render_text, repl};

#[derive(Parser)]
#[command(name = "coquat", version, about = "Split-quaternion calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one expression
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Print a JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Read expressions line by line
    Repl,
    /// Time closed-form powers against repeated multiplication (CSV)
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_N_VALUES.to_vec(),
              value_parser = clap::value_parser!(u64).range(1..))]
        n: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_REPS, value_parser = parse_reps)]
        reps: usize,
        /// Defaults to $COQUAT_SEED, then 42
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the acceptance checks
    Selftest,
}

fn parse_reps(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("reps must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expr, json } => eval(&expr, json),
        Command::Repl => {
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            match repl(stdin.lock(), io::stdout().lock(), prompt) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("coquat: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Command::Bench { n, reps, seed } => {
            let seed = match seed.map(Ok).unwrap_or_else(seed_from_env) {
                Ok(s) => s,
                Err(msg) => {
                    eprintln!("coquat: {msg}");
                    return ExitCode::from(USAGE_ERROR);
                }
            };
            let report = bench_pow(&n, reps, seed);
            eprintln!("resampled {} lightlike or null-vector draws", report.resamples);
            print!("{}", report.to_csv());
            if report.rows.iter().any(|r| matches!(r.check, CrossCheck::Fail(_))) {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Selftest => {
            let outcomes = run_all();
            for o in &outcomes {
                println!("{o}");
            }
            if outcomes.iter().all(|o| o.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn seed_from_env() -> Result<u64, String> {
    match std::env::var("COQUAT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| format!("COQUAT_SEED is not an unsigned integer: {v:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn eval(expr: &str, json: bool) -> ExitCode {
    match (evaluate(expr), json) {
        (Ok(v), false) => {
            println!("{}", render_text(&v));
            ExitCode::SUCCESS
        }
        (Ok(v), true) => {
            println!("{}", render_json(&v));
            ExitCode::SUCCESS
        }
        (Err(e), false) => {
            eprintln!("{}", e.annotate(expr));
            ExitCode::FAILURE
        }
        (Err(e), true) => {
            println!("{}", render_json_error(&e));
            ExitCode::FAILURE
        }
    }
}
