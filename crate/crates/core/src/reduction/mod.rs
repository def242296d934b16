//! Shift reduction: combinations `A_ell` of `aZ`-translates of a nonzero
//! `F` in the span of `f`'s translates that converge to the single translate
//! `T_b f` when `f` decays super-exponentially.
//!
//! The recursion is implemented twice. [`coeff_step`] advances evaluated
//! coefficients and is what [`convergence_run`] uses. [`poly_step`] advances
//! the integer polynomials `p_{ell,j}` exactly and exists to check degree and
//! coefficient bounds and to cross-validate the evaluated path.

mod convergence;
mod multipoly;
mod recursion;

pub use convergence::{
    convergence_run, ConvergenceRow, ConvergenceTable, RunStatus, CONVERGENCE_CSV_HEADER, CONVERGENCE_TOL,
};
pub use multipoly::MultiPoly;
pub use recursion::{
    assemble_A, coeff_step, poly_base, poly_family, poly_levels, poly_listing, poly_step, poly_step_capped,
    poly_vs_coeff_consistency, remainder, span_representation, span_sum, ReductionProblem, ReductionState,
    COEFF_OVERFLOW, TERM_CAP,
};
