//! Completeness of translate systems on compact intervals.
//!
//! * [`core_fn`] evaluates polynomial-times-Gaussian generators, their shifts
//!   and decay envelopes.
//! * [`lambda_sets`] classifies translation sets by the divergence of their
//!   reciprocal series and the matching Blaschke deficit sums.
//! * [`completeness`] samples translate dictionaries and measures
//!   least-squares residuals and annihilator margins.
//! * [`reduction`] runs the shift-reduction recursion exactly (integer
//!   polynomials) and numerically (evaluated coefficients).
//! * [`cli`] drives all of the above from JSON experiment configs.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod completeness;
pub mod core_fn;
pub mod error;
pub mod lambda_sets;
pub mod reduction;
pub mod report;

pub use error::{Error, Result};
pub use num_complex::Complex64;
