mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rotor_core::brauer::BrauerError;
use rotor_core::positivity::PositivityError;
use rotor_core::ribbon::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error(transparent)]
    Positivity(#[from] PositivityError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Exact verification toolkit for vertex-model partition functions on cubic
/// ribbon graphs.
#[derive(Debug, Parser)]
#[command(name = "rotor", version)]
struct Cli {
    /// Write the JSON run report to this path (`-` for stdout, replacing the text output).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate f_c on every graph of a file or fixture.
    Eval {
        #[arg(long)]
        graphs: String,
        #[arg(long)]
        tensor: String,
        /// Also print decimal approximations.
        #[arg(long)]
        float: bool,
    },
    /// The k-join of two graphs as a formal sum.
    Join {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        k: usize,
        /// Also evaluate the join with this tensor.
        #[arg(long)]
        tensor: Option<String>,
    },
    /// Check the theta-expansion identity of the k-join on small graphs.
    LemmaKjoin {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        /// Extra graphs to check besides the enumerated ones.
        #[arg(long)]
        graphs: Option<String>,
    },
    /// Compare (θ−θ′)∨₂(θ−θ′) with (2/3)(○³ − 3○² + 2○).
    ThetaIdentity {
        /// Also probe the multiplicative extension with f(○) = this value.
        #[arg(long, allow_hyphen_values = true)]
        circle: Option<String>,
    },
    /// List isomorphism classes of cubic cyclic graphs by canonical code.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        /// Only connected graphs.
        #[arg(long)]
        connected: bool,
    },
    /// Build the join Gram matrix and decide positive semidefiniteness exactly.
    Gram(GramArgs),
    /// Perfect-matching eigenvector checks.
    Brauer {
        #[command(subcommand)]
        action: BrauerAction,
    },
    /// Weight-system axioms for a tensor.
    Weights {
        #[command(subcommand)]
        action: WeightsAction,
    },
    /// Run every exact check for one tensor.
    VerifyAll {
        #[arg(long, default_value = "so3")]
        tensor: String,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Gradient inner products against 1-join Gram entries, plus finite differences.
    GradCheck {
        #[arg(long, default_value = "so3")]
        tensor: String,
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        /// Central-difference step.
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
    },
}

#[derive(Debug, Args)]
struct GramArgs {
    #[arg(long)]
    tensor: String,
    #[arg(long, default_value_t = 4)]
    max_vertices: usize,
    #[arg(long)]
    k: usize,
    /// Extra graphs appended to the enumerated ones.
    #[arg(long)]
    graphs: Option<String>,
}

#[derive(Debug, Subcommand)]
enum BrauerAction {
    Verify {
        #[arg(long)]
        k: usize,
        /// Full A^Q check at k = 2, capped by ROTOR_DEEP_BUDGET_SECS.
        #[arg(long)]
        deep: bool,
        /// Comma-separated rational sample points.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1,3/2,3")]
        x: Vec<String>,
        #[arg(long, env = "ROTOR_DEEP_BUDGET_SECS", default_value_t = 600, hide = true)]
        budget_secs: u64,
    },
}

#[derive(Debug, Subcommand)]
enum WeightsAction {
    Check {
        #[arg(long)]
        tensor: String,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
    },
}

fn run(cli: &Cli) -> Result<report::Run, CliError> {
    use commands as c;
    match &cli.command {
        Command::Eval { graphs, tensor, float } => c::eval(graphs, tensor, *float),
        Command::Join { left, right, k, tensor } => c::join(left, right, *k, tensor.as_deref()),
        Command::LemmaKjoin { max_vertices, k_max, graphs } => c::lemma_kjoin(*max_vertices, *k_max, graphs.as_deref()),
        Command::ThetaIdentity { circle } => c::theta_identity(circle.as_deref()),
        Command::Enumerate { max_vertices, connected } => c::enumerate(*max_vertices, *connected),
        Command::Gram(a) => c::gram(&a.tensor, a.max_vertices, a.k, a.graphs.as_deref()),
        Command::Brauer { action: BrauerAction::Verify { k, deep, x, budget_secs } } => {
            c::brauer_verify(*k, *deep, x, *budget_secs)
        }
        Command::Weights { action: WeightsAction::Check { tensor, max_vertices } } => {
            c::weights_check(tensor, *max_vertices)
        }
        Command::VerifyAll { tensor, max_vertices, k_max } => c::verify_all(tensor, *max_vertices, *k_max),
        Command::GradCheck { tensor, max_vertices, step } => c::grad_check(tensor, *max_vertices, *step),
    }
}

fn emit(cli: &Cli, run: report::Run) -> Result<report::Status, CliError> {
    let (report, lines) = run.finish();
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match cli.json.as_deref() {
        Some("-") => println!("{json}"),
        Some(path) => {
            std::fs::write(path, json + "\n")?;
            lines.iter().for_each(|l| println!("{l}"));
        }
        None => lines.iter().for_each(|l| println!("{l}")),
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|r| emit(&cli, r)) {
        Ok(report::Status::Pass) => ExitCode::SUCCESS,
        Ok(report::Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
