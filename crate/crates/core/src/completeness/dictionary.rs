use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::core_fn::{Generator, Grid};
use crate::error::{Error, Result};
use crate::lambda_sets::TranslationSet;

/// Translate samples `f(t_i - lambda_k)` on a grid, each column divided by
/// its sampled sup norm.
#[derive(Debug, Clone)]
pub struct SampledDictionary {
    generator: Generator,
    grid: Grid,
    lambdas: TranslationSet,
    matrix: DMatrix<Complex64>,
    log_scales: Vec<f64>,
}

pub fn build_dictionary(g: &Generator, grid: &Grid, lam: &TranslationSet) -> Result<SampledDictionary> {
    if lam.is_empty() {
        return Err(Error::Empty("translation set"));
    }
    let m = grid.len();
    let mut matrix = DMatrix::zeros(m, lam.len());
    let mut log_scales = Vec::with_capacity(lam.len());
    for (k, &lambda) in lam.values().iter().enumerate() {
        let (col, log_scale) = g.unit_translate(grid.points(), lambda)?;
        matrix.column_mut(k).copy_from_slice(&col);
        log_scales.push(log_scale);
    }
    Ok(SampledDictionary {
        generator: g.clone(),
        grid: grid.clone(),
        lambdas: lam.clone(),
        matrix,
        log_scales,
    })
}

impl SampledDictionary {
    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn lambdas(&self) -> &TranslationSet {
        &self.lambdas
    }

    /// Column-scaled matrix (`M x K`).
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    /// Natural log of each column's sampled sup norm.
    pub fn log_scales(&self) -> &[f64] {
        &self.log_scales
    }

    /// Sampled sup norm of each unscaled translate. Translates far outside
    /// the exponent range report 0 here; use [`Self::log_scales`] for them.
    pub fn column_scales(&self) -> Vec<f64> {
        self.log_scales.iter().map(|l| l.exp()).collect()
    }
}
