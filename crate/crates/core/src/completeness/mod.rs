//! Numerical witnesses for completeness: translate dictionaries,
//! truncated-SVD best approximation, size sweeps and annihilator margins.
//!
//! Nothing here decides completeness. Residuals and margins are evidence
//! only; verdicts come from [`crate::lambda_sets::classify`].

mod annihilator;
mod approx;
mod dictionary;
mod sweep;

pub use annihilator::{annihilator_margin, AnnihilatorResult};
pub use approx::{best_approximation, ApproximationResult, DEFAULT_CUTOFF};
pub use dictionary::{build_dictionary, SampledDictionary};
pub use sweep::{completeness_sweep, SweepRow, SweepTable, Target, SWEEP_CSV_HEADER};

/// Default number of grid nodes on `I`.
pub const DEFAULT_GRID_POINTS: usize = 401;
