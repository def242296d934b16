use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dictionary::SampledDictionary;
use crate::core_fn::{lp_norm, sup_norm};
use crate::error::{invalid, Result};

/// Default relative singular-value cutoff.
pub const DEFAULT_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApproximationResult {
    /// Coefficients of the unscaled translates `f(. - lambda_k)`. Entries for
    /// translates outside the exponent range overflow to infinity.
    pub coefficients: Vec<Complex64>,
    /// Coefficients of the unit-sup columns.
    pub scaled_coefficients: Vec<Complex64>,
    #[serde(skip)]
    pub residual: Vec<Complex64>,
    pub residual_sup: f64,
    /// `(p, ||r||_p)` for every requested exponent.
    pub residual_lp: Vec<(f64, f64)>,
    /// Euclidean norm of the scaled coefficients.
    pub coefficient_norm: f64,
    pub effective_rank: usize,
}

/// Thin SVD `A = U diag(s) V^H` with singular values in descending order.
pub(crate) struct ThinSvd {
    pub u: DMatrix<Complex64>,
    pub s: Vec<f64>,
    pub v_t: DMatrix<Complex64>,
}

pub(crate) fn thin_svd(a: &DMatrix<Complex64>) -> ThinSvd {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^H");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    ThinSvd {
        u: DMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]),
        s: order.iter().map(|&i| svd.singular_values[i]).collect(),
        v_t: DMatrix::from_fn(order.len(), v_t.ncols(), |r, c| v_t[(order[r], c)]),
    }
}

/// Least-squares fit of `target` by the dictionary columns via truncated SVD.
pub fn best_approximation(
    dict: &SampledDictionary,
    target: &[Complex64],
    cutoff: f64,
    ps: &[f64],
) -> Result<ApproximationResult> {
    if !(cutoff > 0.0 && cutoff < 1.0) {
        return invalid(format!("cutoff must lie in (0, 1), got {cutoff}"));
    }
    if target.len() != dict.rows() {
        return invalid(format!(
            "target has {} samples but the grid has {}",
            target.len(),
            dict.rows()
        ));
    }
    let a = dict.matrix();
    let b = DVector::from_column_slice(target);
    let svd = thin_svd(a);
    let sigma_max = svd.s.first().copied().unwrap_or(0.0);
    let rank = svd.s.iter().take_while(|&&s| s > cutoff * sigma_max && s > 0.0).count();

    let mut y = DVector::<Complex64>::zeros(a.ncols());
    for i in 0..rank {
        let proj = svd.u.column(i).dotc(&b) / svd.s[i];
        y += svd.v_t.row(i).adjoint() * proj;
    }
    let residual: Vec<Complex64> = (&b - a * &y).iter().copied().collect();

    let residual_sup = sup_norm(&residual)?;
    let residual_lp = ps
        .iter()
        .map(|&p| Ok((p, lp_norm(&residual, p, dict.grid().step())?)))
        .collect::<Result<Vec<_>>>()?;
    let scaled_coefficients: Vec<Complex64> = y.iter().copied().collect();
    let coefficients = scaled_coefficients
        .iter()
        .zip(dict.log_scales())
        .map(|(c, l)| c * (-l).exp())
        .collect();
    Ok(ApproximationResult {
        coefficients,
        coefficient_norm: y.norm(),
        scaled_coefficients,
        residual,
        residual_sup,
        residual_lp,
        effective_rank: rank,
    })
}
