//! Batch front end: read an [`ExperimentConfig`], dispatch to an engine and
//! write its reports into an output directory.
//!
//! Exit codes: 0 on success, 2 when the config cannot be read, parsed or
//! validated, 1 when an engine fails or a report cannot be written. On
//! failure an error JSON goes to stderr and to `error.json` in the output
//! directory when that directory is usable.

pub mod config;

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub use config::{Command, ExperimentConfig, SCHEMA_VERSION};

use crate::completeness::{
    annihilator_margin, build_dictionary, completeness_sweep, AnnihilatorResult, SweepRow, Target,
};
use crate::error::Error;
use crate::lambda_sets::{classify, ClassificationReport, Family, TranslationSet, Verdict};
use crate::reduction::{convergence_run, poly_levels, poly_listing, ConvergenceRow, ReductionProblem, RunStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ENGINE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("engine error: {0}")]
    Engine(#[from] Error),
    #[error("i/o error on {path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            RunError::Engine(_) | RunError::Io { .. } => EXIT_ENGINE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            RunError::Config(_) => "config",
            RunError::Engine(_) => "engine",
            RunError::Io { .. } => "io",
        }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport {
            schema_version: SCHEMA_VERSION.into(),
            kind: self.kind().into(),
            message: self.to_string(),
            exit_code: self.exit_code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorReport {
    pub schema_version: String,
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub schema_version: String,
    pub count: usize,
    #[serde(flatten)]
    pub report: ClassificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproxReport {
    pub schema_version: String,
    pub family: Family,
    pub verdict: Verdict,
    pub grid_points: usize,
    pub cutoff: f64,
    pub note: String,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnihilatorReport {
    pub schema_version: String,
    pub k: usize,
    pub grid_points: usize,
    #[serde(flatten)]
    pub result: AnnihilatorResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReduceReport {
    pub schema_version: String,
    pub n: usize,
    pub status: RunStatus,
    #[serde(rename = "fitted_C")]
    pub fitted_c: f64,
    pub overflow_at: Option<usize>,
    pub growth_within_bound: bool,
    pub rows: Vec<ConvergenceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolysReport {
    pub schema_version: String,
    pub n: usize,
    pub ell: usize,
    pub max_degree: u32,
    /// Decimal string; coefficients are exact integers of any size.
    pub max_abs_coeff: String,
    /// `levels[l-1][j-1]` is the canonical text of `p_{l,j}`.
    pub levels: Vec<Vec<String>>,
}

const EVIDENCE_NOTE: &str = "residuals are numerical evidence only; they neither prove nor \
                             disprove completeness of the translate system";

/// Read and validate a config file. Every failure here is a config error.
pub fn load_config(path: &Path, command: Command) -> Result<ExperimentConfig, RunError> {
    let text =
        fs::read_to_string(path).map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
    let cfg = ExperimentConfig::parse(&text).map_err(RunError::Config)?;
    if cfg.command != command {
        return Err(RunError::Config(format!(
            "config is for '{}' but the '{}' command was invoked",
            cfg.command.as_str(),
            command.as_str()
        )));
    }
    cfg.validate().map_err(|e| RunError::Config(e.to_string()))?;
    Ok(cfg)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, RunError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| RunError::Io {
        path: path.clone(),
        message: e.to_string(),
    })?;
    Ok(path)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Run a validated config and return the report files written, in order.
pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, RunError> {
    fs::create_dir_all(out).map_err(|e| RunError::Io {
        path: out.to_path_buf(),
        message: e.to_string(),
    })?;
    match cfg.command {
        Command::Classify => run_classify(cfg, out),
        Command::Approx => run_approx(cfg, out),
        Command::Reduce => run_reduce(cfg, out),
        Command::Polys => run_polys(cfg, out),
    }
}

fn run_classify(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, RunError> {
    let lam = cfg.lambda()?.build()?;
    let report = ClassifyReport {
        schema_version: SCHEMA_VERSION.into(),
        count: lam.len(),
        report: classify(&lam),
    };
    Ok(vec![write(out, "classification.json", &json(&report))?])
}

fn run_approx(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, RunError> {
    let g = cfg.generator()?;
    let grid = cfg.grid()?;
    let family = cfg.family()?;
    let sizes = cfg.sizes()?;
    let largest = TranslationSet::from_family(family.truncated(*sizes.last().expect("validated"))?)?;
    let targets = cfg
        .targets
        .clone()
        .unwrap_or_else(|| Target::defaults(largest.values()[0]));
    let table = completeness_sweep(&g, &grid, family, sizes, &targets, cfg.cutoff(), cfg.p())?;

    let mut files = vec![write(out, "sweep.csv", &table.to_csv())?];
    let report = ApproxReport {
        schema_version: SCHEMA_VERSION.into(),
        family: family.clone(),
        verdict: family.verdict(),
        grid_points: grid.len(),
        cutoff: cfg.cutoff(),
        note: EVIDENCE_NOTE.into(),
        rows: table.rows,
    };
    files.push(write(out, "approx_summary.json", &json(&report))?);

    if let Some(probes) = &cfg.probes {
        let dict = build_dictionary(&g, &grid, &largest)?;
        let result = annihilator_margin(&dict, &TranslationSet::explicit(probes.clone())?)?;
        let report = AnnihilatorReport {
            schema_version: SCHEMA_VERSION.into(),
            k: largest.len(),
            grid_points: grid.len(),
            result,
        };
        files.push(write(out, "annihilator.json", &json(&report))?);
    }
    Ok(files)
}

fn run_reduce(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, RunError> {
    let problem = ReductionProblem::new(cfg.generator()?, cfg.a()?, cfg.b(), cfg.m0.unwrap_or(0), cfg.d()?)?;
    let grid = cfg.grid()?;
    let table = convergence_run(&problem, &grid, cfg.ell_max()?)?;
    let csv = write(out, "convergence.csv", &table.to_csv())?;
    let report = ReduceReport {
        schema_version: SCHEMA_VERSION.into(),
        n: problem.n(),
        status: table.status,
        fitted_c: table.fitted_c(),
        overflow_at: table.overflow_at,
        growth_within_bound: table.growth_within_bound,
        rows: table.rows,
    };
    Ok(vec![csv, write(out, "reduce_summary.json", &json(&report))?])
}

fn run_polys(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<PathBuf>, RunError> {
    let (n, ell) = (cfg.n()?, cfg.ell()?);
    let levels = poly_levels(n, ell)?;
    let text = poly_listing(n, ell)?;
    let report = PolysReport {
        schema_version: SCHEMA_VERSION.into(),
        n,
        ell,
        max_degree: levels.iter().flatten().map(|p| p.degree()).max().unwrap_or(0),
        max_abs_coeff: levels
            .iter()
            .flatten()
            .map(|p| p.max_abs_coeff())
            .max()
            .unwrap_or_default()
            .to_string(),
        levels: levels
            .iter()
            .map(|f| f.iter().map(ToString::to_string).collect())
            .collect(),
    };
    Ok(vec![
        write(out, "polys.txt", &text)?,
        write(out, "polys.json", &json(&report))?,
    ])
}

/// Full command: load, run, and report failures. Returns the exit code.
///
/// `out` overrides the config's `output`; without either the current
/// directory is used.
pub fn execute(command: Command, config_path: &Path, out: Option<&Path>) -> i32 {
    let cfg = load_config(config_path, command);
    let out_dir = out
        .map(Path::to_path_buf)
        .or_else(|| cfg.as_ref().ok().and_then(|c| c.output.clone()))
        .unwrap_or_else(|| PathBuf::from("."));
    match cfg.and_then(|c| run(&c, &out_dir)) {
        Ok(_) => EXIT_OK,
        Err(e) => {
            let body = json(&e.report());
            eprint!("{body}");
            if out_dir.is_dir() {
                let _ = fs::write(out_dir.join("error.json"), &body);
            }
            e.exit_code()
        }
    }
}
