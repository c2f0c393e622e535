//! Quantum-chaos diagnostics for the kicked top: parity-resolved eigenphase
//! statistics, spectral form factor, eigenvector measures, OTOC and
//! Loschmidt echo.

pub mod blocks;
pub mod dynamics;
pub mod eigvec;
pub mod ratio;
pub mod reference;
pub mod sff;
pub mod spacing;
pub mod stats;
pub mod synthetic;

pub use blocks::{eigen_blocks, eigen_system, BlockLabel, EigenBlock, SpectrumBlock};
pub use dynamics::{fit_echo, loschmidt_echo, otoc, otoc_matrix, saturation_onset, EchoCurve, EchoFit, OtocCurve};
pub use eigvec::{eigenstate_entropy, eth_stats, ipr, EthSpec, Observable, ObservableStats, Participation};
pub use ratio::{ratio_statistics, ratio_statistics_phases, RatioStats};
pub use reference::{spacing_cdf, spacing_reference, RatioLaw, SpacingKind};
pub use sff::{sff, sff_from_phases, trace_power_sff, EnsembleSpec, Resolution, SffCurve, SffDescriptor, SffSpec};
pub use spacing::{circular_spacings, unfold_phases, unfold_spacings, SpacingSample, DEFAULT_WINDOW, MIN_LEVELS};
pub use stats::{histogram, ks_distance, Histogram};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiagnosticsError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Quantum(#[from] spin_quantum::QuantumError),
}

pub type Result<T> = std::result::Result<T, DiagnosticsError>;
