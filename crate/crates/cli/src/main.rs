//! Batch front end: experiment configuration, trajectory/measure CSV and
//! report emission, and plot-script generation.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

// `!(x > 0.0)` rejects NaN along with the sign.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl From<qipflow_core::Error> for CliError {
    fn from(e: qipflow_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("io error: {e}"))
    }
}

#[derive(Parser)]
#[command(
    name = "qipflow",
    version,
    about = "Interferometric-power flow and non-Markovianity measures for \
             two-qubit states under dephasing and amplitude damping"
)]
pub struct Cli {
    /// Flat `key = value` configuration file (flags override it).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output path (stdout when omitted).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// QIP reporting convention: eq4 or sqrt.
    #[arg(long, global = true)]
    convention: Option<String>,

    /// Quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Number of grid points.
    #[arg(long = "grid-points", global = true)]
    grid_points: Option<usize>,

    /// Final time, in the channel's natural unit.
    #[arg(long = "t-max", global = true)]
    t_max: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct ChannelArgs {
    /// Channel kind: dephasing or damping.
    #[arg(long)]
    channel: Option<String>,

    /// Ohmic coupling constant (dephasing).
    #[arg(long)]
    alpha: Option<f64>,

    /// Ohmicity parameter (dephasing).
    #[arg(long = "S")]
    s: Option<f64>,

    /// Spectral width over coupling, lambda/gamma0 (damping).
    #[arg(long = "lambda-over-gamma0")]
    lambda_over_gamma0: Option<f64>,

    /// Detuning in units of gamma0 (damping).
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args)]
pub struct StateArgs {
    /// Initial joint state: bell, werner, schmidt or file.
    #[arg(long)]
    state: Option<String>,

    /// Werner parameter r in [0, 1].
    #[arg(long = "werner-r")]
    werner_r: Option<f64>,

    /// Schmidt angle theta for cos(theta)|00> + sin(theta)|11>.
    #[arg(long = "schmidt-theta")]
    schmidt_theta: Option<f64>,

    /// Density-matrix text file (`dims`, `re`, `im` fields) for
    /// --state file.
    #[arg(long = "state-file", value_name = "PATH")]
    state_file: Option<PathBuf>,
}

#[derive(Args)]
pub struct PairArgs {
    /// State pair for the distinguishability measure:
    /// auto, plus-minus, zero-one or bloch.
    #[arg(long)]
    pair: Option<String>,

    /// Bloch vector `x,y,z` of the first pair state (pair = bloch).
    #[arg(long = "pair-bloch-a", value_name = "X,Y,Z")]
    pair_bloch_a: Option<String>,

    /// Bloch vector `x,y,z` of the second pair state (pair = bloch).
    #[arg(long = "pair-bloch-b", value_name = "X,Y,Z")]
    pair_bloch_b: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a channel and write its trajectory CSV.
    Evolve {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Damping amplitude source: closed-form or volterra.
        #[arg(long)]
        solver: Option<String>,
    },
    /// Sample Q(t) for an initial state and write the flow CSV.
    #[command(name = "qip-flow")]
    QipFlow {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Add concurrence and mutual-information columns.
        #[arg(long)]
        compare: bool,
    },
    /// Compute a non-Markovianity measure and write its report.
    Measure {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        pair: PairArgs,
        /// Which measure: qip, blp, mutual or rhp.
        #[arg(long)]
        measure: Option<String>,
        /// Initial-state family for the qip lower-bound search:
        /// bell, werner-grid or pure-grid.
        #[arg(long)]
        family: Option<String>,
        /// Also write the monitored trajectory CSV here.
        #[arg(long = "trajectory-csv", value_name = "PATH")]
        trajectory_csv: Option<PathBuf>,
    },
    /// Sweep a channel parameter and tabulate all measures.
    Sweep {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Comma-separated parameter values (S or lambda/gamma0).
        #[arg(long)]
        values: Option<String>,
    },
    /// Emit a gnuplot script referencing existing CSV files.
    #[command(name = "plot-script")]
    PlotScript {
        /// Which figure layout: fig1, fig2 or fig3.
        #[arg(long)]
        figure: Option<String>,
        /// Input CSV path (repeatable).
        #[arg(long = "csv", value_name = "PATH")]
        csv: Vec<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = config::Config::load(cli.config.as_deref())?;
    let globals = commands::Globals::resolve(&cfg, &cli)?;
    match &cli.command {
        Command::Evolve { channel, solver } => {
            commands::evolve::run(&cfg, &globals, channel, solver.as_deref())
        }
        Command::QipFlow {
            channel,
            state,
            compare,
        } => commands::qip_flow::run(&cfg, &globals, channel, state, *compare),
        Command::Measure {
            channel,
            state,
            pair,
            measure,
            family,
            trajectory_csv,
        } => commands::measure::run(
            &cfg,
            &globals,
            channel,
            state,
            pair,
            measure.as_deref(),
            family.as_deref(),
            trajectory_csv.as_deref(),
        ),
        Command::Sweep {
            channel,
            state,
            values,
        } => commands::sweep::run(&cfg, &globals, channel, state, values.as_deref()),
        Command::PlotScript { figure, csv } => {
            commands::plot_script::run(&cfg, &globals, figure.as_deref(), csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Config(_) => ExitCode::from(2),
                CliError::Numerical(_) => ExitCode::from(3),
            }
        }
    }
}
