use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use secular::cli::{self, CliResult, SweepSpec};

#[derive(Parser)]
#[command(
    name = "secular",
    version,
    about = "Resum perturbation series through the effective secular polynomial"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file and print OK
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Perturbation series coefficients of every model-space state
    Series {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Exact characteristic polynomial coefficients p_j(lambda)
    Charpoly {
        #[arg(long)]
        model: PathBuf,
    },
    /// Order-K effective secular polynomial as JSON
    Reconstruct {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Exact and resummed eigenvalues on a real lambda grid, as CSV
    Sweep {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda_min: f64,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        lambda_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, value_delimiter = ',', default_value = "6")]
        orders: Vec<usize>,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exceptional points from the discriminant, as JSON
    Ep {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
        /// Include the exact characteristic polynomial
        #[arg(long)]
        exact: bool,
    },
    /// Nearest exceptional point for K = 2, 4, 6, 8, 10 and the exact value
    Table1 {
        /// Defaults to the bundled three-state model
        #[arg(long)]
        model: Option<PathBuf>,
    },
}

fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Validate { model } => cli::cmd_validate(&model),
        Command::Series { model, order } => cli::cmd_series(&model, order),
        Command::Charpoly { model } => cli::cmd_charpoly(&model),
        Command::Reconstruct { model, order } => cli::cmd_reconstruct(&model, order),
        Command::Sweep {
            model,
            lambda_min,
            lambda_max,
            steps,
            orders,
            out,
        } => {
            let spec = SweepSpec {
                lambda_min,
                lambda_max,
                steps,
                orders,
            };
            cli::cmd_sweep(&model, &spec, out.as_deref())
        }
        Command::Ep {
            model,
            orders,
            exact,
        } => cli::cmd_ep(&model, &orders, exact),
        Command::Table1 { model } => cli::cmd_table1(model.as_deref()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
