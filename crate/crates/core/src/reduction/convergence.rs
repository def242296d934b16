use serde::{Deserialize, Serialize};

use super::recursion::{remainder, ReductionProblem, ReductionState};
use crate::core_fn::{sup_norm, Grid};
use crate::error::{invalid, Error, Result};
use crate::report::fmt_real;

/// `err(ell)` at or below this counts as converged.
pub const CONVERGENCE_TOL: f64 = 1e-10;

pub const CONVERGENCE_CSV_HEADER: &str = "ell,err_sup,max_q,fitted_C,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    /// `err` dropped to `CONVERGENCE_TOL`.
    Converged,
    /// `err` at the last level is no smaller than halfway through the run.
    NoConvergence,
    /// Neither of the above within `ell_max`.
    Inconclusive,
    /// The coefficient iteration overflowed; the table is truncated.
    Overflow,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::Converged => "converged",
            RunStatus::NoConvergence => "no-convergence",
            RunStatus::Inconclusive => "inconclusive",
            RunStatus::Overflow => "overflow",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub ell: usize,
    /// `sup_I |A_ell - T_b f| = sup_I |Q_ell|` on the grid.
    pub err_sup: f64,
    /// `max_j |q_j^{(ell)}|`
    pub max_q: f64,
    /// Running `max_{l <= ell} (max_q(l))^{1/l}`.
    pub fitted_c: f64,
    /// `converged` once `err_sup <= CONVERGENCE_TOL`, `ok` otherwise.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub status: RunStatus,
    /// Level at which the coefficient iteration overflowed, if it did.
    pub overflow_at: Option<usize>,
    /// Whether `ln max_q(ell) <= ell ln C + 1` held for the final fitted `C`.
    pub growth_within_bound: bool,
}

impl ConvergenceTable {
    pub fn fitted_c(&self) -> f64 {
        self.rows.last().map(|r| r.fitted_c).unwrap_or(0.0)
    }

    pub fn err(&self, ell: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.ell == ell).map(|r| r.err_sup)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CONVERGENCE_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.ell,
                fmt_real(r.err_sup),
                fmt_real(r.max_q),
                fmt_real(r.fitted_c),
                r.status
            ));
        }
        if let Some(ell) = self.overflow_at {
            out.push_str(&format!("{ell},,,,overflow\n"));
        }
        out
    }
}

/// Iterate the reduction for `ell = 1..=ell_max` and record how far `A_ell`
/// is from `T_b f` on the grid.
pub fn convergence_run(problem: &ReductionProblem, grid: &Grid, ell_max: usize) -> Result<ConvergenceTable> {
    if ell_max < 1 {
        return invalid("ell_max must be >= 1");
    }
    let mut state = ReductionState::initial(problem);
    let mut rows = Vec::with_capacity(ell_max);
    let mut fitted_c = 0.0f64;
    let mut overflow_at = None;
    loop {
        let q = remainder(problem, &state, grid)?;
        let err_sup = sup_norm(&q)?;
        let max_q = state.q.iter().map(|z| z.norm()).fold(0.0, f64::max);
        fitted_c = fitted_c.max(max_q.powf(1.0 / state.ell as f64));
        rows.push(ConvergenceRow {
            ell: state.ell,
            err_sup,
            max_q,
            fitted_c,
            status: if err_sup <= CONVERGENCE_TOL { "converged" } else { "ok" }.into(),
        });
        if state.ell == ell_max {
            break;
        }
        match state.advance(problem) {
            Ok(()) => {}
            Err(Error::CoefficientOverflow { .. }) => {
                overflow_at = Some(state.ell + 1);
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let growth_within_bound = rows
        .iter()
        .all(|r| r.max_q == 0.0 || r.max_q.ln() <= r.ell as f64 * fitted_c.ln() + 1.0);
    let status = if overflow_at.is_some() {
        RunStatus::Overflow
    } else if rows.iter().any(|r| r.err_sup <= CONVERGENCE_TOL) {
        RunStatus::Converged
    } else if rows.len() >= 3 && rows[rows.len() - 1].err_sup >= rows[(rows.len() - 1) / 2].err_sup {
        RunStatus::NoConvergence
    } else {
        RunStatus::Inconclusive
    };
    Ok(ConvergenceTable {
        rows,
        status,
        overflow_at,
        growth_within_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_fn::{Generator, Interval, PolyGaussianGenerator, TabulatedGenerator};
    use num_complex::Complex64;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn grid() -> Grid {
        Grid::uniform(Interval::new(-1.0, 1.0).unwrap(), 401).unwrap()
    }

    #[test]
    fn gaussian_n1_matches_closed_form() {
        let g: Generator = PolyGaussianGenerator::gaussian(1.0).unwrap().into();
        let p = ReductionProblem::from_normalized(g, 1.0, 0.0, vec![re(2.0)]).unwrap();
        let table = convergence_run(&p, &grid(), 10).unwrap();
        for r in &table.rows {
            let l = r.ell as f64;
            let expected = 2f64.powi(r.ell as i32) * (-(l - 1.0) * (l - 1.0)).exp();
            assert!(((r.err_sup - expected) / expected).abs() < 1e-12, "ell {}", r.ell);
            assert!((r.fitted_c - 2.0).abs() < 1e-12);
        }
        assert!(table.err(8).unwrap() <= 1e-12);
        assert_eq!(table.status, RunStatus::Converged);
        assert!(table.growth_within_bound);
    }

    #[test]
    fn zero_coefficients_give_zero_error() {
        let g: Generator = PolyGaussianGenerator::gaussian(1.0).unwrap().into();
        let p = ReductionProblem::from_normalized(g, 1.0, 0.0, vec![re(0.0), re(0.0)]).unwrap();
        let table = convergence_run(&p, &grid(), 6).unwrap();
        assert!(table.rows.iter().all(|r| r.err_sup == 0.0 && r.max_q == 0.0));
    }

    #[test]
    fn exponential_decay_does_not_converge() {
        let g: Generator = TabulatedGenerator::from_fn(-30.0, 30.0, 60_001, |x| re((-x.abs()).exp()))
            .unwrap()
            .into();
        let p = ReductionProblem::from_normalized(g, 1.0, 0.0, vec![re(4.0)]).unwrap();
        let table = convergence_run(&p, &grid(), 8).unwrap();
        assert_eq!(table.status, RunStatus::NoConvergence);
        // 4^ell e^{-(ell-1)}: ratio err(8)/err(2) = 4^6 e^{-6}
        let ratio = table.err(8).unwrap() / table.err(2).unwrap();
        assert!((ratio - 4096.0 * (-6.0f64).exp()).abs() < 1e-4, "ratio {ratio}");
    }

    #[test]
    fn overflow_truncates_table() {
        let g: Generator = PolyGaussianGenerator::gaussian(1.0).unwrap().into();
        let p = ReductionProblem::from_normalized(g, 1.0, 0.0, vec![re(1e100)]).unwrap();
        let table = convergence_run(&p, &grid(), 10).unwrap();
        assert_eq!(table.status, RunStatus::Overflow);
        assert_eq!(table.rows.len(), 3);
        assert_eq!(table.overflow_at, Some(4));
        assert!(table.to_csv().ends_with("4,,,,overflow\n"));
    }

    #[test]
    fn csv_header_and_columns() {
        let g: Generator = PolyGaussianGenerator::gaussian(1.0).unwrap().into();
        let p = ReductionProblem::from_normalized(g, 1.0, 0.0, vec![re(2.0)]).unwrap();
        let csv = convergence_run(&p, &grid(), 3).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CONVERGENCE_CSV_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("1,2.0000000000000000e0,2.0000000000000000e0,"));
    }
}
