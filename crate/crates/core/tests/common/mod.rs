#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::DMatrix;
use translab::cli::{Command, ExperimentConfig};
use translab::core_fn::Grid;
use translab::reduction::ReductionProblem;
use translab::Complex64;

pub fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs")
}

pub fn load(name: &str) -> ExperimentConfig {
    let text = std::fs::read_to_string(configs_dir().join(name)).unwrap();
    let cfg = ExperimentConfig::parse(&text).unwrap();
    cfg.validate().unwrap();
    cfg
}

/// Reduction problems shipped as configs whose generator is polynomial times
/// Gaussian, with their grids.
pub fn shipped_problems() -> Vec<(String, ReductionProblem, Grid)> {
    let mut names: Vec<String> = std::fs::read_dir(configs_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.starts_with("reduce_"))
        .collect();
    names.sort();
    names
        .into_iter()
        .filter_map(|name| {
            let cfg = load(&name);
            assert_eq!(cfg.command, Command::Reduce);
            let g = cfg.generator().unwrap();
            if !matches!(g, translab::core_fn::Generator::PolyGaussian(_)) {
                return None;
            }
            let p = ReductionProblem::new(g, cfg.a().unwrap(), cfg.b(), cfg.m0.unwrap_or(0), cfg.d().unwrap()).unwrap();
            Some((name, p, cfg.grid().unwrap()))
        })
        .collect()
}

/// Singular values by one-sided (Hestenes) Jacobi rotations, descending.
/// Written independently of any library SVD so it can serve as an oracle.
pub fn jacobi_singular_values(a: &DMatrix<Complex64>) -> Vec<f64> {
    let k = a.ncols();
    let mut cols: Vec<Vec<Complex64>> = (0..k).map(|j| a.column(j).iter().copied().collect()).collect();
    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha = dot(&cols[p], &cols[p]).re;
                let beta = dot(&cols[q], &cols[q]).re;
                let gamma = dot(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // make the inner product real, then rotate as in the real case
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                for (xp, xq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (a, b) = (*xp, *xq * phase.conj());
                    *xp = a * c - b * s;
                    *xq = a * s + b * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut s: Vec<f64> = cols.iter().map(|c| dot(c, c).re.sqrt()).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}
