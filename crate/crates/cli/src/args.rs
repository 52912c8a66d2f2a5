//! Command-line surface: subcommands and their flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Spin correlations and entanglement of the BCS superconducting ground
/// state, computed in dimensionless units (energies over ε_F, lengths times
/// k_F).
#[derive(Debug, Parser)]
#[command(name = "bcs-spin", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the pair occupation v² and pair amplitude u·v against ε/ε_F
    Coherence(JobArgs),
    /// Tabulate correlators and entanglement measures on a separation grid
    Sweep(JobArgs),
    /// Print the two-spin density matrix and its measures at one separation
    State(StateArgs),
    /// Locate the separation beyond which the two spins stay separable
    Length(JobArgs),
}

/// Flags shared by every subcommand. All are optional so that unset flags
/// fall through to the config file and then to the built-in defaults
/// (a 1 meV gap, 100 meV Debye energy and 1 eV Fermi energy).
#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// Gap ratio δ = Δ/ε_F
    #[arg(long, value_name = "RATIO", allow_negative_numbers = true)]
    pub delta: Option<f64>,

    /// Pairing-shell half-width w = ħω_D/ε_F
    #[arg(long = "debye-w", value_name = "RATIO", allow_negative_numbers = true)]
    pub debye_w: Option<f64>,

    /// Gap Δ in meV (physical alternative to --delta)
    #[arg(long = "gap-mev", value_name = "MEV", allow_negative_numbers = true)]
    pub gap_mev: Option<f64>,

    /// Debye energy ħω_D in meV
    #[arg(long = "debye-mev", value_name = "MEV", allow_negative_numbers = true)]
    pub debye_mev: Option<f64>,

    /// Fermi energy ε_F in eV
    #[arg(long = "fermi-ev", value_name = "EV", allow_negative_numbers = true)]
    pub fermi_ev: Option<f64>,

    /// First grid point (separation x = k_F·r, or ε/ε_F for coherence)
    #[arg(long = "x-start", value_name = "X", allow_negative_numbers = true)]
    pub x_start: Option<f64>,

    /// Last grid point
    #[arg(long = "x-end", value_name = "X", allow_negative_numbers = true)]
    pub x_end: Option<f64>,

    /// Grid spacing
    #[arg(long = "x-step", value_name = "STEP", allow_negative_numbers = true)]
    pub x_step: Option<f64>,

    /// Output format
    #[arg(long, value_enum, value_name = "FORMAT")]
    pub format: Option<OutputFormat>,

    /// Flat `key = value` config file; flags override its entries
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Relative tolerance of the adaptive integrator
    #[arg(long = "rel-tol", value_name = "TOL", allow_negative_numbers = true)]
    pub rel_tol: Option<f64>,

    /// Absolute tolerance of the adaptive integrator
    #[arg(long = "abs-tol", value_name = "TOL", allow_negative_numbers = true)]
    pub abs_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Separation x = k_F·r at which to evaluate the state
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    pub x: Option<f64>,

    #[command(flatten)]
    pub job: JobArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Comma-separated values with a header row
    Csv,
    /// Array of row objects
    Json,
}
