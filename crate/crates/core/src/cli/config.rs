//! JSON experiment configuration, schema version "1".

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::completeness::{Target, DEFAULT_CUTOFF, DEFAULT_GRID_POINTS};
use crate::core_fn::{Generator, Grid, Interval, PolyGaussianGenerator, TabulatedGenerator};
use crate::error::{invalid, Result};
use crate::lambda_sets::{Family, TranslationSet};
use crate::reduction::ReductionProblem;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Classify,
    Approx,
    Reduce,
    Polys,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Approx => "approx",
            Command::Reduce => "reduce",
            Command::Polys => "polys",
        }
    }
}

/// A real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexSpec> for Complex64 {
    fn from(c: ComplexSpec) -> Self {
        match c {
            ComplexSpec::Real(re) => Complex64::new(re, 0.0),
            ComplexSpec::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

fn complex_vec(v: &[ComplexSpec]) -> Vec<Complex64> {
    v.iter().copied().map(Complex64::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// `q(t) exp(-c t^2)` with `q(t) = sum_j alpha_j t^j`.
    PolyGaussian { alpha: Vec<ComplexSpec>, c: f64 },
    /// User samples, linearly interpolated, zero outside `xs`.
    Tabulated { xs: Vec<f64>, values: Vec<ComplexSpec> },
    /// `exp(-rate |t|)` tabulated on `[-half_width, half_width]`.
    ExpAbs { rate: f64, half_width: f64, points: usize },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Generator> {
        Ok(match self {
            GeneratorSpec::PolyGaussian { alpha, c } => PolyGaussianGenerator::new(complex_vec(alpha), *c)?.into(),
            GeneratorSpec::Tabulated { xs, values } => TabulatedGenerator::new(xs.clone(), complex_vec(values))?.into(),
            GeneratorSpec::ExpAbs {
                rate,
                half_width,
                points,
            } => {
                if !(*rate > 0.0) {
                    return invalid(format!("exp_abs rate must be positive, got {rate}"));
                }
                let r = *rate;
                TabulatedGenerator::from_fn(-half_width, *half_width, *points, move |x| {
                    Complex64::new((-r * x.abs()).exp(), 0.0)
                })?
                .into()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalSpec {
    pub lo: f64,
    pub hi: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_points() -> usize {
    DEFAULT_GRID_POINTS
}

impl IntervalSpec {
    pub fn grid(&self) -> Result<Grid> {
        Grid::uniform(Interval::new(self.lo, self.hi)?, self.points)
    }
}

/// Either `{"kind": "explicit", "values": [...]}` or a parametric family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaSpec {
    Explicit(ExplicitValues),
    Family(Family),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitValues {
    pub kind: ExplicitTag,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExplicitTag {
    Explicit,
}

impl LambdaSpec {
    pub fn build(&self) -> Result<TranslationSet> {
        match self {
            LambdaSpec::Explicit(e) => TranslationSet::explicit(e.values.clone()),
            LambdaSpec::Family(f) => TranslationSet::from_family(f.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: String,
    pub command: Command,
    #[serde(default)]
    pub generator: Option<GeneratorSpec>,
    #[serde(default)]
    pub interval: Option<IntervalSpec>,
    #[serde(default)]
    pub lambda: Option<LambdaSpec>,

    // approx
    #[serde(default)]
    pub sizes: Option<Vec<usize>>,
    #[serde(default)]
    pub targets: Option<Vec<Target>>,
    #[serde(default)]
    pub cutoff: Option<f64>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub probes: Option<Vec<f64>>,

    // reduce
    #[serde(default)]
    pub a: Option<f64>,
    #[serde(default)]
    pub b: Option<f64>,
    #[serde(default)]
    pub m0: Option<i64>,
    /// `d_{m0}, ..., d_m` of `F = sum_k d_k T_{ak+b} f`.
    #[serde(default)]
    pub d: Option<Vec<ComplexSpec>>,
    #[serde(default)]
    pub ell_max: Option<usize>,

    // polys
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub ell: Option<usize>,

    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn required<'a, T>(v: &'a Option<T>, name: &str, cmd: Command) -> Result<&'a T> {
    v.as_ref()
        .map_or_else(|| invalid(format!("'{name}' is required for {}", cmd.as_str())), Ok)
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version '{}', expected '{SCHEMA_VERSION}'",
                cfg.schema_version
            ));
        }
        Ok(cfg)
    }

    pub fn generator(&self) -> Result<Generator> {
        required(&self.generator, "generator", self.command)?.build()
    }

    pub fn grid(&self) -> Result<Grid> {
        required(&self.interval, "interval", self.command)?.grid()
    }

    pub fn lambda(&self) -> Result<&LambdaSpec> {
        required(&self.lambda, "lambda", self.command)
    }

    pub fn family(&self) -> Result<&Family> {
        match self.lambda()? {
            LambdaSpec::Family(f) => Ok(f),
            LambdaSpec::Explicit(_) => invalid("approx sweeps need a parametric lambda family"),
        }
    }

    pub fn sizes(&self) -> Result<&[usize]> {
        Ok(required(&self.sizes, "sizes", self.command)?)
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff.unwrap_or(DEFAULT_CUTOFF)
    }

    pub fn p(&self) -> f64 {
        self.p.unwrap_or(2.0)
    }

    pub fn a(&self) -> Result<f64> {
        required(&self.a, "a", self.command).copied()
    }

    pub fn b(&self) -> f64 {
        self.b.unwrap_or(0.0)
    }

    pub fn d(&self) -> Result<Vec<Complex64>> {
        Ok(complex_vec(required(&self.d, "d", self.command)?))
    }

    pub fn ell_max(&self) -> Result<usize> {
        required(&self.ell_max, "ell_max", self.command).copied()
    }

    pub fn n(&self) -> Result<usize> {
        required(&self.n, "n", self.command).copied()
    }

    pub fn ell(&self) -> Result<usize> {
        required(&self.ell, "ell", self.command).copied()
    }

    /// Check every parameter the command needs, without running it.
    pub fn validate(&self) -> Result<()> {
        match self.command {
            Command::Classify => {
                self.lambda()?.build()?;
            }
            Command::Approx => {
                self.generator()?;
                self.grid()?;
                let fam = self.family()?;
                let sizes = self.sizes()?;
                if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] == 0 {
                    return invalid("sizes must be positive and strictly increasing");
                }
                TranslationSet::from_family(fam.truncated(*sizes.last().expect("nonempty"))?)?;
                let c = self.cutoff();
                if !(c > 0.0 && c < 1.0) {
                    return invalid(format!("cutoff must lie in (0, 1), got {c}"));
                }
                if !(self.p() >= 1.0) || !self.p().is_finite() {
                    return invalid(format!("p must satisfy 1 <= p < inf, got {}", self.p()));
                }
                if let Some(probes) = &self.probes {
                    TranslationSet::explicit(probes.clone())?;
                }
            }
            Command::Reduce => {
                self.grid()?;
                ReductionProblem::new(self.generator()?, self.a()?, self.b(), self.m0.unwrap_or(0), self.d()?)?;
                if self.ell_max()? < 1 {
                    return invalid("ell_max must be >= 1");
                }
            }
            Command::Polys => {
                if self.n()? < 1 || self.ell()? < 1 {
                    return invalid("n and ell must be >= 1");
                }
            }
        }
        Ok(())
    }
}
