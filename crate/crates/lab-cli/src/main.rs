use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hypdrift_cli::{catalog, exit, load_config, output_dir, run_experiment, run_suite, Result, Status, OUT_ENV};

#[derive(Parser)]
#[command(name = "hypdrift", version, about = "Random walks, Gibbs densities and the fundamental inequality on hyperbolic group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a JSON config file or a builtin name.
    Run {
        config: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replaces the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every builtin config and print a pass/fail table.
    Suite {
        #[arg(long, default_value = "hypdrift-out")]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List actions, measures, potentials or configs.
    List { kind: String },
    /// Describe an action, measure, potential or builtin config.
    Describe { name: String },
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Run { config, out, seed } => {
            let mut config = load_config(&config)?;
            if let Some(s) = seed {
                config.seed = s;
            }
            let dir = output_dir(out.as_deref(), std::env::var_os(OUT_ENV).map(PathBuf::from), &config);
            let report = run_experiment(&config)?;
            report.write(&dir)?;
            for c in &report.checks {
                println!("{}  {:<22} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            println!("wrote {}", dir.join("report.json").display());
            Ok(match report.status {
                Status::Ok => exit::OK,
                Status::Inconclusive => exit::INCONCLUSIVE,
            })
        }
        Command::Suite { out, seed } => {
            let outcome = run_suite(&out, seed)?;
            print!("{}", outcome.table());
            Ok(if outcome.passed() { exit::OK } else { exit::ERROR })
        }
        Command::List { kind } => {
            print!("{}", catalog::list(&kind)?);
            Ok(exit::OK)
        }
        Command::Describe { name } => {
            print!("{}", catalog::describe(&name)?);
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::ERROR as u8)
        }
    }
}
