use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{InitialState, Model, RunConfig};
use crate::error::Result;

/// Steady states, transients and design searches for a two-qubit absorption
/// refrigerator with reversed bath couplings.
#[derive(Debug, Parser)]
#[command(name = "thermoq", version, about, allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration; flags below override its fields.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub model: Option<Model>,
    #[arg(long, global = true)]
    pub e1: Option<f64>,
    #[arg(long, global = true)]
    pub e2: Option<f64>,
    #[arg(long, global = true)]
    pub tc: Option<f64>,
    #[arg(long, global = true)]
    pub tr: Option<f64>,
    #[arg(long, global = true)]
    pub th: Option<f64>,
    #[arg(long, global = true)]
    pub pc: Option<f64>,
    #[arg(long, global = true)]
    pub pr: Option<f64>,
    #[arg(long, global = true)]
    pub ph: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also write an SVG chart next to `--out`.
    #[arg(long, global = true)]
    pub plot: bool,
    /// Seed for randomised searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print generator parameters and ρ_S to standard error.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stationary state, heat currents and efficiencies.
    Steady,
    /// RK4 transient from an initial state, as CSV.
    Evolve {
        #[arg(long)]
        t_final: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, value_enum)]
        initial: Option<InitialState>,
        /// Number of time rows.
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Steady state over a one-parameter grid, as CSV.
    Sweep {
        /// `param:min:max:count[:log]`, e.g. `th:1.2:1000:50:log`.
        #[arg(long, value_name = "SPEC")]
        sweep: String,
    },
    /// Second-qubit gap that maximises the cooling current.
    #[command(name = "optimize-e2")]
    OptimizeE2 {
        /// Search bracket `lo:hi` for E2.
        #[arg(long, value_name = "LO:HI")]
        bracket: Option<String>,
        /// Repeat over hot temperatures `min:max:count[:log]`, as CSV.
        #[arg(long, value_name = "SPEC")]
        scan: Option<String>,
    },
    /// Locate and verify the reversible point.
    Carnot,
    /// Two-qubit fridge against the qutrit reference.
    Compare {
        /// Number of random parameter draws to search for a two-qubit win.
        #[arg(long)]
        search: Option<usize>,
    },
}

impl Common {
    /// Config file (or defaults) with the command-line overrides applied.
    pub fn config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(m) = self.model {
            cfg.model = m;
        }
        let overrides =
            [("e1", self.e1), ("e2", self.e2), ("t_c", self.tc), ("t_r", self.tr), ("t_h", self.th), ("p_c", self.pc), ("p_r", self.pr), ("p_h", self.ph)];
        for (field, value) in overrides {
            if let Some(v) = value {
                cfg.set(field, v)?;
            }
        }
        Ok(cfg)
    }
}
