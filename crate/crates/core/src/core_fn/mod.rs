//! Generators, shift operators, grids, norms and decay envelopes.

pub mod envelope;
pub mod generator;
pub mod grid;
pub mod norms;

pub use envelope::{shift_envelope, superexp_check, DecayProbe, DecayReport, DecayStatus};
pub use generator::{
    gaussian_shift_factorization, Generator, PolyGaussianGenerator, ShiftFactors, TabulatedGenerator, EXPONENT_GUARD,
};
pub use grid::{Grid, Interval};
pub use norms::{lp_norm, sup_norm};
