use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qactivate::cli::{cmd_activate, cmd_q, cmd_reproduce, cmd_swap, exit_code, load_state, BasisSpec, RunReport};
use qactivate::quantumness::OptimizerConfig;
use qactivate::swapping::SwapBudget;
use qactivate::Error;

#[derive(Parser)]
#[command(name = "qactivate", version, about = "Quantumness, activation and entanglement swapping for small states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct StateArgs {
    /// State file or built-in name (bell, cq-example, qq-example, eq21, classical-2x2, pseudo-iso)
    #[arg(long)]
    state: String,
    /// Mixing weight for pseudo-iso
    #[arg(long, default_value_t = 0.05)]
    p: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Relative entropy of quantumness
    Q {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-9)]
        ftol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the activation circuit and write the output state
    Activate {
        #[command(flatten)]
        input: StateArgs,
        /// computational, random:<seed>, or comma-separated angles
        #[arg(long, default_value = "computational")]
        basis: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an ancilla filter that swaps entanglement into the systems
    Swap {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, default_value = "computational")]
        basis: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        opt_restarts: usize,
        #[arg(long, default_value_t = 2000)]
        max_iters: usize,
        /// Extra seeded random bases to scan
        #[arg(long, default_value_t = 20)]
        bases: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Only try the uniform filter
        #[arg(long)]
        trivial_filter: bool,
    },
    /// Run the built-in check suite and write reproduction.csv
    Reproduce {
        #[arg(long, default_value = "reproduction.csv")]
        out: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn emit(report: &RunReport, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let report = match cli.command {
        Command::Q {
            input,
            restarts,
            max_iters,
            ftol,
            seed,
        } => {
            let loaded = load_state(&input.state, input.p)?;
            let cfg = OptimizerConfig {
                restarts,
                max_iters,
                ftol,
                seed,
            };
            cmd_q(&loaded, &cfg)?
        }
        Command::Activate { input, basis, out } => {
            let loaded = load_state(&input.state, input.p)?;
            cmd_activate(&loaded, &basis.parse::<BasisSpec>()?, out.as_deref())?
        }
        Command::Swap {
            input,
            basis,
            samples,
            opt_restarts,
            max_iters,
            bases,
            seed,
            trivial_filter,
        } => {
            let loaded = load_state(&input.state, input.p)?;
            let budget = SwapBudget {
                samples,
                opt_restarts,
                max_iters,
                seed,
            };
            cmd_swap(&loaded, &basis.parse::<BasisSpec>()?, &budget, bases, trivial_filter)?
        }
        Command::Reproduce { out, seed } => {
            let (report, rows) = cmd_reproduce(&out, seed)?;
            emit(&report, cli.format);
            return Ok(if rows.iter().all(|r| r.pass) { 0 } else { 1 });
        }
    };
    emit(&report, cli.format);
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
