use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use adicforge::adic::DEFAULT_CAP;
use adicforge::groebner::Budget;
use adicforge::harness::{run_suite, SUITES};
use adicforge::session::{execute, exit_code, parse_session, print_report, Format, Options};

#[derive(Parser)]
#[command(name = "adicforge", version, about = "Exact computations with finitely presented adic rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a session file.
    Run {
        session: PathBuf,
        /// Truncation cap for level-indexed checks.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
        /// Maximum critical pairs per Gröbner basis.
        #[arg(long, default_value_t = Budget::default().max_pairs)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Report every timing as 0 (for reproducible output).
        #[arg(long)]
        no_timing: bool,
    },
    /// Run a lemma harness over the seeded corpus; `all` runs every suite.
    Fuzz {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 3)]
        cap: u32,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            session,
            cap,
            budget,
            format,
            no_timing,
        } => {
            let text = match std::fs::read_to_string(&session) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", session.display());
                    return ExitCode::from(3);
                }
            };
            let parsed = match parse_session(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {}: {e}", session.display());
                    return ExitCode::from(3);
                }
            };
            let options = Options {
                cap,
                budget: Budget {
                    max_pairs: budget,
                    ..Budget::default()
                },
                timing: !no_timing,
            };
            let report = execute(&parsed, &options);
            let format = match format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Json => Format::Json,
            };
            print!("{}", print_report(&report, format));
            ExitCode::from(exit_code(&report) as u8)
        }
        Command::Fuzz { suite, seed, cases, cap } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut code = 0;
            for name in names {
                match run_suite(name, seed, cases, cap) {
                    Ok(rep) => {
                        println!("{} {rep}", if rep.ok() { "OK" } else { "FAIL" });
                        if rep.failed > 0 {
                            code = 1;
                        } else if !rep.ok() && code == 0 {
                            code = 2;
                        }
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(3);
                    }
                }
            }
            ExitCode::from(code)
        }
    }
}
