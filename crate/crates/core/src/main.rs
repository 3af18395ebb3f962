use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use hornforge::cli::{self, ProveOptions, EXIT_OK, EXIT_USAGE};
use hornforge::random::{random_problem_text, Bounds};
use hornforge::saturation::{default_portfolio, Strategy};

#[derive(Parser)]
#[command(name = "hornforge", version, about = "Equational Horn prover with checked proof terms")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Prove a problem and write the derivations, the proof and a report.
    Prove {
        input: PathBuf,
        /// AGE:WEIGHT followed by `o` (ordered) or `u`; repeat for a portfolio.
        #[arg(long = "strategy")]
        strategies: Vec<Strategy>,
        #[arg(long)]
        max_clauses: Option<usize>,
        #[arg(long)]
        timeout_secs: Option<f64>,
        /// Run the portfolio one strategy after another; the output is then
        /// deterministic.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        no_ordering: bool,
        /// Also print the refutation on standard output.
        #[arg(long)]
        emit_tstp: bool,
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Turn a TSTP refutation of the problem into a checked proof.
    Reconstruct {
        input: PathBuf,
        derivation: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        normalize: bool,
    },
    /// Check a proof file against a problem.
    Check { proof: PathBuf, input: PathBuf },
    /// Print a random problem.
    RandomProblem {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        ground: bool,
    },
}

fn run(cmd: Cmd) -> Result<i32, cli::CliError> {
    match cmd {
        Cmd::Prove {
            input,
            strategies,
            max_clauses,
            timeout_secs,
            sequential,
            no_ordering,
            emit_tstp,
            normalize,
            out_dir,
        } => {
            let timeout = match timeout_secs {
                Some(t) if !(t.is_finite() && t > 0.0) => {
                    return Err(cli::CliError::Usage(format!("bad timeout {t}")));
                }
                t => t.map(Duration::from_secs_f64),
            };
            let mut opts = ProveOptions {
                strategies: if strategies.is_empty() { default_portfolio() } else { strategies },
                sequential,
                normalize,
                emit_tstp,
                out_dir,
            };
            opts.adjust(max_clauses, timeout, no_ordering);
            let report = cli::cmd_prove(&input, &opts)?;
            if let Some(e) = &report.error {
                eprintln!("{}", cli::diagnostic("error", e));
            }
            let outcome = serde_json::to_value(report.outcome).expect("outcome serializes");
            eprintln!("{}: {}", input.display(), outcome.as_str().unwrap_or_default());
            Ok(report.outcome.exit_code())
        }
        Cmd::Reconstruct {
            input,
            derivation,
            output,
            normalize,
        } => {
            let out = cli::cmd_reconstruct(&input, &derivation, output.as_deref(), normalize)?;
            eprintln!("wrote {}", out.display());
            Ok(EXIT_OK)
        }
        Cmd::Check { proof, input } => {
            cli::cmd_check(&proof, &input)?;
            eprintln!("{}: ok", proof.display());
            Ok(EXIT_OK)
        }
        Cmd::RandomProblem { seed, ground } => {
            let b = if ground { Bounds::ground() } else { Bounds::default() };
            print!("{}", random_problem_text(seed, &b));
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(args.cmd) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}", cli::diagnostic("error", &e.to_string()));
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
