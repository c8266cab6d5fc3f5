//! `fanout-forge`: build GHZ plans and fanout circuits, list contexts,
//! simulate single-shot context measurements and verify circuit files.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "fanout-forge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schedule a GHZ preparation on a coupling graph
    Ghz {
        #[command(flatten)]
        topology: TopologyArgs,
        #[command(flatten)]
        root: RootArg,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum, default_value_t = PlanFormat::Json)]
        format: PlanFormat,
    },
    /// Build the fanout circuit derived from a GHZ schedule
    Fanout {
        #[command(flatten)]
        topology: TopologyArgs,
        #[command(flatten)]
        root: RootArg,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum, default_value_t = CircuitFormat::Json)]
        format: CircuitFormat,
        /// Check the result before emitting it
        #[arg(long, value_enum, default_value_t = VerifyChoice::Tableau)]
        verify: VerifyChoice,
    },
    /// Cumulative entangled-qubit count per CNOT layer, as CSV
    DepthTable {
        #[command(flatten)]
        topology: TopologyArgs,
        #[command(flatten)]
        root: RootArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the observables of a context
    Context {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        s: u8,
        /// Trit string, one digit per qubit; all zeros when omitted
        #[arg(long)]
        beta: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum, default_value_t = ContextFormat::Json)]
        format: ContextFormat,
    },
    /// Prepare a labelled GHZ-class state, measure its context and decode
    MeasureSim {
        #[arg(long)]
        n: usize,
        /// Bitstring, first character is alpha_1; all zeros when omitted
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 0)]
        s: u8,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = 1)]
        shots: usize,
        /// Decode these outcomes instead of simulating
        #[arg(long, value_name = "FILE")]
        shots_file: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Coupling graph for the GHZ schedule; full connectivity when omitted
        #[command(flatten)]
        topology: OptionalTopologyArgs,
        #[command(flatten)]
        root: RootArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a circuit file (JSON or OpenQASM) as a fanout or GHZ preparation
    Verify {
        #[arg(long, value_name = "FILE")]
        circuit: PathBuf,
        /// Control qubit of the fanout; read from the file when present
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, value_enum)]
        role: Option<Role>,
        #[arg(long, value_enum, default_value_t = ModeChoice::Both)]
        mode: ModeChoice,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct TopologySource {
    /// Built-in coupling graph
    #[arg(long, value_enum)]
    topology: Option<Builtin>,
    /// Edge-list file: `u v` per line, optional `n=` header
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct TopologyArgs {
    #[command(flatten)]
    source: TopologySource,
    /// Node count for `full` and `line`
    #[arg(long)]
    n: Option<usize>,
    /// Grid extents for `grid`, e.g. `4x4` or `2x3x4`
    #[arg(long)]
    dims: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OptionalTopologyArgs {
    #[arg(long, value_enum, conflicts_with = "edges")]
    topology: Option<Builtin>,
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
    #[arg(long)]
    dims: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct RootArg {
    /// Root qubit index, or `auto` to search all roots for the shallowest plan
    #[arg(long, default_value = "auto")]
    root: String,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write to this file instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    #[value(name = "heavy-hex-156")]
    HeavyHex156,
    Full,
    Line,
    Grid,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanFormat {
    Json,
    Qasm,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitFormat {
    Json,
    Qasm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContextFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyChoice {
    None,
    Dense,
    Tableau,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeChoice {
    Dense,
    Tableau,
    /// Tableau always, dense as well when the width is under the dense cap
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Fanout,
    Ghz,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(commands::Status::Ok) => ExitCode::SUCCESS,
        Ok(commands::Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
