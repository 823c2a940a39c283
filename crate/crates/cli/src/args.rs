use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Parser, Debug, Clone)]
#[command(name = "opgyro", version, about = "Spin precession around an operator Larmor vector")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Time series of the spin polarisation through one pulse.
    Simulate {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        pulse: PulseArgs,
    },
    /// Final polarisation of a gaussian pulse against ω₀τ.
    Sweep {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 10.0)]
        to: f64,
        #[arg(long, default_value_t = 400)]
        points: usize,
    },
    /// Run the invariant checks; exits 3 on any breach.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        /// Perturb one operator so the checks must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Table of α_n, β_n, γ_n for one J.
    Coefficients {
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
        #[arg(long = "out", value_enum)]
        format: Option<Format>,
    },
    /// ⟨S_z⟩(φ) as a constant plus cosines.
    Expansion {
        #[command(flatten)]
        system: SystemArgs,
    },
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Full,
    Collective,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Toggle {
    On,
    Off,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// What to simulate. Every flag can also come from `--config`; flags win.
#[derive(Args, Debug, Clone, Default)]
pub struct SystemArgs {
    /// JSON run configuration.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Number of identical spins.
    #[arg(long = "n")]
    pub n_spins: Option<usize>,
    /// Spin of each of them, e.g. `1/2`.
    #[arg(long = "s")]
    pub s_each: Option<String>,
    /// Spin of the extra particle.
    #[arg(long = "i")]
    pub i_spin: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Collective spin magnitude; defaults to N·s.
    #[arg(long, allow_hyphen_values = true)]
    pub s_total: Option<String>,
    /// Initial projection of the extra spin; defaults to −I.
    #[arg(long, allow_hyphen_values = true)]
    pub m_i: Option<String>,
    /// JSON array of amplitudes (`x` or `[re, im]`) replacing the ferromagnetic start.
    #[arg(long, value_name = "FILE")]
    pub initial_vector: Option<PathBuf>,
    #[arg(long)]
    pub dim_cap: Option<usize>,
    #[arg(long, value_enum)]
    pub oracle: Option<Toggle>,
    #[arg(long = "out", value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PulseArgs {
    /// Pulse as JSON text or a path to a JSON file.
    #[arg(long)]
    pub pulse: Option<String>,
    /// Gaussian with τ = 1 and this ω₀.
    #[arg(long)]
    pub omega0_tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Sample φ directly as `from:to:points`; the t column is left blank.
    #[arg(long)]
    pub phi_grid: Option<String>,
    /// Comma-separated subset of the output columns.
    #[arg(long, value_delimiter = ',')]
    pub columns: Option<Vec<String>>,
}
