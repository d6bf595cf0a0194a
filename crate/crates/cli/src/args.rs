use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use photon_ledger_core::UnitKind;

#[derive(Debug, Parser)]
#[command(
    name = "photon-ledger",
    version,
    about = "Thermodynamic ledger for optical bit transmission"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Unit system; overrides the config file
    #[arg(long, global = true, value_enum)]
    pub units: Option<Units>,
    /// Seed for random files; overrides the config file
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for machine-readable reports
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Si,
    Natural,
}

impl From<Units> for UnitKind {
    fn from(u: Units) -> Self {
        match u {
            Units::Si => UnitKind::Si,
            Units::Natural => UnitKind::Natural,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Information and entropy report for a binary file (read MSB-first)
    Analyze(AnalyzeArgs),
    /// Run a link simulation from a JSON config
    Simulate(SimulateArgs),
    /// Minimum uniform amplifier placement from a JSON config
    Optimize(OptimizeArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    /// Block order of the plug-in entropy estimator
    #[arg(long, default_value_t = 1)]
    pub block_order: usize,
    /// Photon occupancy of a one-pulse
    #[arg(long, default_value_t = 1e6)]
    pub occupancy: f64,
    /// Carrier frequency in Hz (default: 1 natural, 193.4 THz SI)
    #[arg(long)]
    pub frequency: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub config: PathBuf,
}
