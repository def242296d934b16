//! Shift envelopes `x -> sup_{t in I} |f(t - (a x + b))|` and empirical
//! detection of super-exponential decay.

use serde::{Deserialize, Serialize};

use super::generator::Generator;
use super::grid::{Grid, Interval};
use crate::error::{invalid, Result};

/// Initial node count of the envelope grid.
pub const ENVELOPE_START_POINTS: usize = 513;
/// Refinement stops once the grid exceeds this many intervals.
pub const ENVELOPE_MAX_INTERVALS: usize = 1 << 17;
/// Relative change under doubling that counts as converged.
pub const ENVELOPE_REL_TOL: f64 = 1e-6;

fn sup_on_grid(g: &Generator, grid: &Grid, shift: f64) -> f64 {
    grid.points()
        .iter()
        .map(|&t| g.eval(t - shift).norm())
        .fold(0.0, f64::max)
}

/// Supremum of `|T_shift f|` over `interval`, refining the grid by doubling
/// until two consecutive doublings each change it by at most
/// `ENVELOPE_REL_TOL`. A single quiet doubling is not enough: when the peak
/// sits close to a coarse node the new midpoints cannot improve on it.
pub fn stable_sup(g: &Generator, interval: Interval, shift: f64) -> f64 {
    let mut grid = Grid::uniform(interval, ENVELOPE_START_POINTS).expect("valid start grid");
    let mut current = sup_on_grid(g, &grid, shift);
    let mut quiet = 0;
    while grid.len() - 1 < ENVELOPE_MAX_INTERVALS {
        grid = grid.refined();
        let next = sup_on_grid(g, &grid, shift);
        let stable = next == current || (next - current).abs() <= ENVELOPE_REL_TOL * next.abs();
        current = next;
        quiet = if stable { quiet + 1 } else { 0 };
        if quiet == 2 {
            break;
        }
    }
    current
}

pub fn shift_envelope(g: &Generator, interval: Interval, a: f64, b: f64, xs: &[f64]) -> Result<Vec<f64>> {
    if a == 0.0 || !a.is_finite() {
        return invalid(format!("envelope slope must be finite and nonzero, got {a}"));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return invalid("envelope abscissae must be finite");
    }
    Ok(xs.iter().map(|&x| stable_sup(g, interval, a * x + b)).collect())
}

/// Exponent `gamma` and abscissae at which `E(x) e^{gamma x}` is inspected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayProbe {
    gamma: f64,
    xs: Vec<f64>,
    tolerance: f64,
}

impl DecayProbe {
    pub fn new(gamma: f64, xs: Vec<f64>, tolerance: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return invalid("probe exponent must be finite");
        }
        if xs.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
            return invalid("probe abscissae must be finite and nonnegative");
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("probe abscissae must be strictly increasing");
        }
        if !(tolerance > 0.0) {
            return invalid(format!("probe tolerance must be positive, got {tolerance}"));
        }
        Ok(Self { gamma, xs, tolerance })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum DecayStatus {
    /// Beyond `radius` every weighted sample is below tolerance and non-increasing.
    Crossing { radius: f64 },
    /// Weighted samples are still decreasing at the end of the range but have
    /// not dropped below tolerance.
    Inconclusive,
    /// Weighted samples do not decrease at the end of the range.
    Failure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub gamma: f64,
    pub tolerance: f64,
    pub weighted: Vec<(f64, f64)>,
    #[serde(flatten)]
    pub status: DecayStatus,
}

/// Scan `E(x) e^{gamma x}` at the probe abscissae and return the least
/// sampled `x` from which the weighted envelope stays under tolerance and is
/// non-increasing.
pub fn superexp_check(envelope: &[(f64, f64)], probe: &DecayProbe) -> Result<DecayReport> {
    if envelope.windows(2).any(|w| !(w[0].0 < w[1].0)) {
        return invalid("envelope must be sorted by strictly increasing x");
    }
    let weighted: Vec<(f64, f64)> = envelope
        .iter()
        .map(|&(x, e)| {
            // e == 0 stays 0 even when the weight overflows
            let w = if e == 0.0 { 0.0 } else { e * (probe.gamma * x).exp() };
            (x, w)
        })
        .collect();

    let n = weighted.len();
    let mut start = n;
    while start > 0 {
        let i = start - 1;
        let below = weighted[i].1 < probe.tolerance;
        let monotone = i + 1 == n || weighted[i + 1].1 <= weighted[i].1;
        if below && monotone {
            start = i;
        } else {
            break;
        }
    }

    let status = if start < n {
        DecayStatus::Crossing {
            radius: weighted[start].0,
        }
    } else if n >= 2 && weighted[n - 1].1 < weighted[n - 2].1 {
        DecayStatus::Inconclusive
    } else {
        DecayStatus::Failure
    };
    Ok(DecayReport {
        gamma: probe.gamma,
        tolerance: probe.tolerance,
        weighted,
        status,
    })
}
