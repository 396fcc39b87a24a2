use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use msk_cli::{catalog_command, check_file, RunOptions};

#[derive(Parser)]
#[command(name = "msk", version, about = "Exact checks for multisymplectic and higher Poisson structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check of a scenario file.
    Check {
        file: PathBuf,
        /// Overrides the scenario's global seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the number of sample points per check.
        #[arg(long)]
        samples: Option<usize>,
        /// Also writes the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print a catalog entry as a scenario.
    Catalog {
        name: String,
        /// Parameters as key=value.
        params: Vec<String>,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check { file, seed, samples, json } => match check_file(&file, RunOptions { seed, samples }) {
            Ok(report) => {
                print!("{}", report.to_human());
                if let Some(out) = json {
                    if let Err(e) = std::fs::write(&out, report.to_json() + "\n") {
                        eprintln!("error: cannot write {}: {e}", out.display());
                        return ExitCode::from(2);
                    }
                }
                ExitCode::from(report.exit_code() as u8)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Catalog { name, params } => match catalog_command(&name, &params) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
