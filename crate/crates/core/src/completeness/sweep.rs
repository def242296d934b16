use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::approx::best_approximation;
use super::dictionary::build_dictionary;
use crate::core_fn::{Generator, Grid};
use crate::error::{invalid, Result};
use crate::lambda_sets::{Family, TranslationSet};
use crate::report::fmt_real;

/// Functions to approximate on the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Target {
    /// `sin(3t)`
    Sin3,
    /// `t^2`
    Square,
    /// `exp(-1/(1-u^2))` with `u` the offset from the midpoint of `I` in units
    /// of a quarter of its length.
    Bump,
    /// The translate `f(t - lambda)` itself.
    Member { lambda: f64 },
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Sin3 => "sin3t".into(),
            Target::Square => "t2".into(),
            Target::Bump => "bump".into(),
            Target::Member { lambda } => format!("member@{lambda}"),
        }
    }

    pub fn samples(&self, g: &Generator, grid: &Grid) -> Vec<Complex64> {
        let iv = grid.interval();
        let mid = 0.5 * (iv.lo() + iv.hi());
        let radius = 0.25 * iv.length();
        grid.points()
            .iter()
            .map(|&t| match self {
                Target::Sin3 => Complex64::new((3.0 * t).sin(), 0.0),
                Target::Square => Complex64::new(t * t, 0.0),
                Target::Bump => {
                    let u = (t - mid) / radius;
                    let v = if u.abs() < 1.0 {
                        (-1.0 / (1.0 - u * u)).exp()
                    } else {
                        0.0
                    };
                    Complex64::new(v, 0.0)
                }
                Target::Member { lambda } => g.eval_shift(*lambda, t),
            })
            .collect()
    }

    /// `sin(3t)`, `t^2`, the bump and the translate by `member`.
    pub fn defaults(member: f64) -> Vec<Target> {
        vec![
            Target::Sin3,
            Target::Square,
            Target::Bump,
            Target::Member { lambda: member },
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub target: String,
    pub k: usize,
    pub residual_sup: Option<f64>,
    pub residual_lp: Option<f64>,
    pub p: f64,
    pub coeff_norm: Option<f64>,
    pub effective_rank: Option<usize>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

pub const SWEEP_CSV_HEADER: &str = "target,K,residual_sup,residual_lp,p,coeff_norm,effective_rank,status";

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(fmt_real).unwrap_or_default();
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.target,
                r.k,
                opt(r.residual_sup),
                opt(r.residual_lp),
                fmt_real(r.p),
                opt(r.coeff_norm),
                r.effective_rank.map(|v| v.to_string()).unwrap_or_default(),
                r.status
            ));
        }
        out
    }

    /// Rows for one target, in increasing `K`.
    pub fn rows_for<'a>(&'a self, target: &'a str) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |r| r.target == target)
    }
}

/// Residuals of every target against the first `K` members of `family`,
/// for each `K` in `sizes`.
pub fn completeness_sweep(
    g: &Generator,
    grid: &Grid,
    family: &Family,
    sizes: &[usize],
    targets: &[Target],
    cutoff: f64,
    p: f64,
) -> Result<SweepTable> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] == 0 {
        return invalid("sweep sizes must be positive and strictly increasing");
    }
    if !(cutoff > 0.0 && cutoff < 1.0) {
        return invalid(format!("cutoff must lie in (0, 1), got {cutoff}"));
    }
    let samples: Vec<(String, Vec<Complex64>)> = targets.iter().map(|t| (t.name(), t.samples(g, grid))).collect();

    let per_size: Vec<Vec<SweepRow>> = sizes
        .par_iter()
        .map(|&k| {
            let dict = family
                .truncated(k)
                .and_then(TranslationSet::from_family)
                .and_then(|lam| build_dictionary(g, grid, &lam));
            samples
                .iter()
                .map(|(name, target)| {
                    let fit = dict
                        .as_ref()
                        .map_err(Clone::clone)
                        .and_then(|d| best_approximation(d, target, cutoff, &[p]));
                    match fit {
                        Ok(r) => SweepRow {
                            target: name.clone(),
                            k,
                            residual_sup: Some(r.residual_sup),
                            residual_lp: Some(r.residual_lp[0].1),
                            p,
                            coeff_norm: Some(r.coefficient_norm),
                            effective_rank: Some(r.effective_rank),
                            status: "ok".into(),
                        },
                        Err(e) => SweepRow {
                            target: name.clone(),
                            k,
                            residual_sup: None,
                            residual_lp: None,
                            p,
                            coeff_norm: None,
                            effective_rank: None,
                            status: format!("skipped: {}", e.to_string().replace(',', ";")),
                        },
                    }
                })
                .collect()
        })
        .collect();

    // target-major order, K ascending within a target
    let mut rows = Vec::with_capacity(sizes.len() * targets.len());
    for ti in 0..targets.len() {
        rows.extend(per_size.iter().map(|rs| rs[ti].clone()));
    }
    Ok(SweepTable { rows })
}
