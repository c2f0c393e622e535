use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use classical_top::GridSpec;
use serde::Serialize;

use crate::angle::Angle;

#[derive(Debug, Parser)]
#[command(name = "qkt", version, about = "Kicked-top batch runs: classical maps, spectra, entanglement and chaos diagnostics")]
pub struct Cli {
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// TOML file of `flag = value` pairs; its values override the command line.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: QKT_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// `--grid 100x100` as θ cells × φ cells.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridArg(pub GridSpec);

impl std::str::FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("grid must look like 100x100, got '{s}'"))?;
        let parse = |v: &str| v.trim().parse::<usize>().map_err(|_| format!("bad grid size '{s}'"));
        GridSpec::new(parse(a)?, parse(b)?).map(GridArg).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TopArgs {
    /// Kick strength (decimal or multiple of pi, e.g. 3pi/2).
    #[arg(long, allow_hyphen_values = true)]
    pub k: Angle,
    /// Precession angle.
    #[arg(long, default_value = "pi/2", allow_hyphen_values = true)]
    pub p: Angle,
    /// Second kick about x (double-kicked top).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub k_prime: Angle,
    /// Order of the kick, `Jz^m`.
    #[arg(long, default_value_t = 2)]
    pub m_order: u32,
}

impl TopArgs {
    pub fn params(&self) -> classical_top::Params {
        classical_top::Params::standard(self.k.value, self.p.value).with_k_prime(self.k_prime.value).with_m_order(self.m_order)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuantumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub top: TopArgs,
    /// Spin quantum number; `2j` must be an integer.
    #[arg(long)]
    pub j: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionArg {
    Full,
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChoiceArg {
    TwoPiJ,
    PiJ,
    HalfPiJ,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Orbits from a grid of seeds, as (θ, φ) per kick.
    PhasePortrait {
        #[command(flatten)]
        #[serde(flatten)]
        top: TopArgs,
        #[arg(long, default_value = "10x10")]
        grid: GridArg,
        #[arg(long, default_value_t = 500)]
        kicks: usize,
    },
    /// Largest Lyapunov exponent over a (θ, φ) grid.
    LleGrid {
        #[command(flatten)]
        #[serde(flatten)]
        top: TopArgs,
        #[arg(long, default_value = "50x50")]
        grid: GridArg,
        #[arg(long, default_value_t = 1000)]
        kicks: usize,
        #[arg(long, default_value_t = 10)]
        renorm_interval: usize,
    },
    /// Periodic points of a given period with stability.
    FixedPoints {
        #[command(flatten)]
        #[serde(flatten)]
        top: TopArgs,
        #[arg(long, default_value_t = 1)]
        period: usize,
    },
    /// Time-averaged linear entropy over a grid of coherent states.
    EntropyLandscape {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
        #[arg(long, default_value = "50x50")]
        grid: GridArg,
        #[arg(long, default_value_t = 500)]
        kicks: usize,
    },
    /// Linear entropy series of one coherent state and its average.
    EntropyAvg {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
        #[arg(long)]
        theta: Angle,
        #[arg(long, allow_hyphen_values = true)]
        phi: Angle,
        #[arg(long, default_value_t = 1000)]
        kicks: usize,
    },
    /// Unfolded nearest-neighbour spacings per parity block.
    Spacing {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
        #[arg(long, default_value_t = chaos_diagnostics::DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value_t = 40)]
        bins: usize,
        #[arg(long, default_value_t = 4.0)]
        s_max: f64,
    },
    /// Consecutive spacing ratios per parity block.
    Ratios {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
        /// β of the surmise compared against (1, 2 or 4).
        #[arg(long, default_value_t = 1)]
        beta: u32,
    },
    /// Spectral form factor K(t)/N.
    Sff {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
        /// Largest time, in kicks.
        #[arg(long)]
        t_max: usize,
        /// Ensemble members over k(1 ± width); 1 disables the ensemble.
        #[arg(long, default_value_t = 20)]
        members: usize,
        /// Relative half-width of the k ensemble.
        #[arg(long, default_value_t = 0.01)]
        width: f64,
        /// Odd width of a moving average in t.
        #[arg(long)]
        smooth: Option<usize>,
        /// Subtract |⟨Tr Uᵗ⟩|² over the ensemble.
        #[arg(long)]
        connected: bool,
        /// Whole spectrum or one parity block.
        #[arg(long, value_enum, default_value_t = ResolutionArg::Full)]
        resolution: ResolutionArg,
    },
    /// Inverse participation ratio and single-qubit entropy of each eigenstate.
    Ipr {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
    },
    /// Diagonal and off-diagonal matrix-element statistics.
    Eth {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
        /// jz/j, jx/j, jy/j or jz^2/j^2.
        #[arg(long, default_value = "jy/j")]
        observable: String,
        #[arg(long, default_value_t = 51)]
        window: usize,
        #[arg(long, default_value_t = 51)]
        offdiag: usize,
        #[arg(long, default_value_t = 10)]
        bins: usize,
    },
    /// Squared-commutator OTOC at infinite temperature.
    Otoc {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
        #[arg(long, default_value_t = 30)]
        t_max: usize,
        #[arg(long, default_value = "jz/j")]
        observable: String,
    },
    /// Loschmidt echo under k → k + δk.
    Echo {
        #[command(flatten)]
        #[serde(flatten)]
        q: QuantumArgs,
        #[arg(long, allow_hyphen_values = true)]
        delta_k: f64,
        #[arg(long)]
        theta: Angle,
        #[arg(long, allow_hyphen_values = true)]
        phi: Angle,
        #[arg(long, default_value_t = 200)]
        t_max: usize,
    },
    /// Exact recurrence predicate (2–4 qubits) and a matrix search for Uⁿ ∝ I.
    Recurrence {
        /// Qubit count 2j.
        #[arg(long)]
        qubits: u32,
        #[arg(long, conflicts_with = "choice", allow_hyphen_values = true)]
        k: Option<Angle>,
        #[arg(long, value_enum)]
        choice: Option<ChoiceArg>,
        #[arg(long, default_value_t = 2000)]
        cutoff: u64,
    },
    /// Closed-form few-qubit results against matrix evolution.
    ValidateExact {
        /// Restrict the gate to 2, 3 or 4 qubits.
        #[arg(long)]
        qubits: Option<u32>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 200)]
        n_max: u64,
        #[arg(long, default_value_t = 11)]
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::PhasePortrait { .. } => "phase-portrait",
            Command::LleGrid { .. } => "lle-grid",
            Command::FixedPoints { .. } => "fixed-points",
            Command::EntropyLandscape { .. } => "entropy-landscape",
            Command::EntropyAvg { .. } => "entropy-avg",
            Command::Spacing { .. } => "spacing",
            Command::Ratios { .. } => "ratios",
            Command::Sff { .. } => "sff",
            Command::Ipr { .. } => "ipr",
            Command::Eth { .. } => "eth",
            Command::Otoc { .. } => "otoc",
            Command::Echo { .. } => "echo",
            Command::Recurrence { .. } => "recurrence",
            Command::ValidateExact { .. } => "validate-exact",
        }
    }
}
