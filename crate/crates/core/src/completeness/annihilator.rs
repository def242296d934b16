use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::approx::thin_svd;
use super::dictionary::SampledDictionary;
use crate::error::{Error, Result};
use crate::lambda_sets::TranslationSet;

/// Discrete functional on the grid nodes that nearly annihilates every
/// dictionary column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnihilatorResult {
    /// Unit-norm node weights `w` (conjugated left singular vector).
    pub weights: Vec<Complex64>,
    /// Smallest singular value of the scaled dictionary, equal to
    /// `|sum_i w_i A[i, k]|` collected over `k` in Euclidean norm.
    pub margin: f64,
    /// Largest `|sum_i w_i g(t_i)|` over the unit-sup probe translates `g`.
    pub probe_max: f64,
    /// `(lambda, |sum_i w_i g(t_i)|)` per probe.
    pub probe_values: Vec<(f64, f64)>,
}

pub fn annihilator_margin(dict: &SampledDictionary, probes: &TranslationSet) -> Result<AnnihilatorResult> {
    let (m, k) = (dict.rows(), dict.cols());
    if m <= k {
        return Err(Error::Precondition(format!(
            "annihilator needs more grid nodes than translates, got M={m}, K={k}"
        )));
    }
    if let Some(p) = probes.values().iter().find(|p| dict.lambdas().values().contains(p)) {
        return Err(Error::Precondition(format!(
            "probe {p} is a member of the translation set"
        )));
    }

    let svd = thin_svd(dict.matrix());
    let last = svd.s.len() - 1;
    let margin = svd.s[last];
    let weights: Vec<Complex64> = svd.u.column(last).iter().map(|z| z.conj()).collect();

    let points = dict.grid().points();
    let probe_values = probes
        .values()
        .iter()
        .map(|&lambda| {
            let (col, _) = dict.generator().unit_translate(points, lambda)?;
            let pairing: Complex64 = weights.iter().zip(&col).map(|(w, c)| w * c).sum();
            Ok((lambda, pairing.norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    let probe_max = probe_values.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    Ok(AnnihilatorResult {
        weights,
        margin,
        probe_max,
        probe_values,
    })
}
