use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kummer_cli::commands::{self, Formula, Outcome, RunArgs, EXIT_INVARIANT, EXIT_IO, EXIT_OK};
use kummer_cli::oracle::{run_suite, SUITES};

/// Kummer towers, witness sets and oracle suites.
///
/// Exit codes: 0 pass, 1 semantic validation, 2 I/O or schema, 3 invariant
/// failure.
#[derive(Parser)]
#[command(name = "kummer", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a construction or theory config and list violated clauses.
    Validate { config: PathBuf },
    /// Run construction stages, writing state.json and log.json.
    Run {
        config: PathBuf,
        /// Number of stages; defaults to the config's maxStages.
        #[arg(long)]
        steps: Option<usize>,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Continue from a saved state.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Check invariants and formulas on a saved state.
    Check {
        state: PathBuf,
        /// Comma-separated: eq-odd, eq-even, def-f, def-au, properties.
        #[arg(long, value_delimiter = ',')]
        formulas: Vec<String>,
        /// JSON file {"pairs": [[u, r1, r2], ...]}.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Run a property suite.
    Oracle {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Build a prefix of a model of a theory config and check its axioms.
    Theory {
        config: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        /// Write the report as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn dispatch(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Validate { config } => commands::validate(&config),
        Cmd::Run { config, steps, seed, out, resume } => {
            commands::run(&RunArgs { config, steps, seed, out, resume })
        }
        Cmd::Check { state, formulas, witnesses } => {
            let mut parsed = Vec::new();
            for f in &formulas {
                match Formula::parse(f) {
                    Some(x) => parsed.push(x),
                    None => return Outcome { code: EXIT_IO, text: format!("usage: unknown formula {f}\n") },
                }
            }
            commands::check(&state, &parsed, witnesses.as_deref())
        }
        Cmd::Oracle { suite, seed, trials } => match run_suite(&suite, seed, trials) {
            Some(rep) => Outcome {
                code: if rep.passed() { EXIT_OK } else { EXIT_INVARIANT },
                text: rep.to_string(),
            },
            None => Outcome {
                code: EXIT_IO,
                text: format!("usage: unknown suite {suite}; known: {}\n", SUITES.join(", ")),
            },
        },
        Cmd::Theory { config, depth, out } => commands::theory(&config, depth, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let out = dispatch(Cli::parse().cmd);
    if out.code == EXIT_OK {
        print!("{}", out.text);
    } else {
        eprint!("{}", out.text);
    }
    ExitCode::from(out.code as u8)
}
