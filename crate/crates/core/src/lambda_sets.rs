//! Translation sets and their classification by reciprocal divergence.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// How a translation set was generated. Parametric families carry the
/// analytic tail that decides divergence of the reciprocal series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    Explicit,
    /// `a*k + b` for `k = k_min..=k_max`.
    Arithmetic {
        a: f64,
        b: f64,
        k_min: i64,
        k_max: i64,
    },
    /// `scale * ratio^k` for `k = 1..=count`.
    Lacunary {
        ratio: f64,
        count: usize,
        #[serde(default = "one")]
        scale: f64,
    },
    /// `scale * k^exponent` for `k = 1..=count`.
    Power {
        exponent: f64,
        count: usize,
        #[serde(default = "one")]
        scale: f64,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Divergent,
    Convergent,
    Unknown,
}

impl Family {
    fn values(&self) -> Result<Vec<f64>> {
        match *self {
            Family::Explicit => invalid("explicit family carries no generating rule"),
            Family::Arithmetic { a, b, k_min, k_max } => {
                if a == 0.0 || !a.is_finite() || !b.is_finite() {
                    return invalid(format!("arithmetic family needs finite a != 0, got a={a}, b={b}"));
                }
                if k_min > k_max {
                    return invalid(format!("arithmetic family needs k_min <= k_max, got {k_min} > {k_max}"));
                }
                Ok((k_min..=k_max).map(|k| a * k as f64 + b).collect())
            }
            Family::Lacunary { ratio, count, scale } => {
                if !(ratio > 1.0) || !ratio.is_finite() {
                    return invalid(format!("lacunary family needs ratio > 1, got {ratio}"));
                }
                check_scale(scale)?;
                Ok((1..=count as i32).map(|k| scale * ratio.powi(k)).collect())
            }
            Family::Power { exponent, count, scale } => {
                if !(exponent > 0.0) || !exponent.is_finite() {
                    return invalid(format!("power family needs exponent > 0, got {exponent}"));
                }
                check_scale(scale)?;
                Ok((1..=count).map(|k| scale * (k as f64).powf(exponent)).collect())
            }
        }
    }

    /// Tail verdict of the infinite family.
    pub fn verdict(&self) -> Verdict {
        match *self {
            Family::Explicit => Verdict::Unknown,
            Family::Arithmetic { .. } => Verdict::Divergent,
            Family::Lacunary { .. } => Verdict::Convergent,
            Family::Power { exponent, .. } if exponent <= 1.0 => Verdict::Divergent,
            Family::Power { .. } => Verdict::Convergent,
        }
    }

    /// Same family restricted to its first `count` members.
    pub fn truncated(&self, count: usize) -> Result<Self> {
        if count == 0 {
            return invalid("truncation to zero members");
        }
        Ok(match *self {
            Family::Explicit => return invalid("explicit family cannot be truncated by rule"),
            Family::Arithmetic { a, b, k_min, .. } => Family::Arithmetic {
                a,
                b,
                k_min,
                k_max: k_min + count as i64 - 1,
            },
            Family::Lacunary { ratio, scale, .. } => Family::Lacunary { ratio, count, scale },
            Family::Power { exponent, scale, .. } => Family::Power { exponent, count, scale },
        })
    }

    /// Multiply every member by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        check_scale(s)?;
        Ok(match *self {
            Family::Explicit => Family::Explicit,
            Family::Arithmetic { a, b, k_min, k_max } => Family::Arithmetic {
                a: a * s,
                b: b * s,
                k_min,
                k_max,
            },
            Family::Lacunary { ratio, count, scale } => Family::Lacunary {
                ratio,
                count,
                scale: scale * s,
            },
            Family::Power { exponent, count, scale } => Family::Power {
                exponent,
                count,
                scale: scale * s,
            },
        })
    }
}

fn check_scale(s: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return invalid(format!("scale must be positive and finite, got {s}"));
    }
    Ok(())
}

/// Finite list of distinct real translations together with its family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslationSet {
    values: Vec<f64>,
    family: Family,
}

impl TranslationSet {
    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        Self::checked(values, Family::Explicit)
    }

    pub fn from_family(family: Family) -> Result<Self> {
        let values = family.values()?;
        Self::checked(values, family)
    }

    fn checked(values: Vec<f64>, family: Family) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return invalid("translations must be finite");
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("translations must be distinct, {} repeats", w[0]));
        }
        Ok(Self { values, family })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Running sums of `1/|lambda|` over the nonzero members, in input order.
pub fn reciprocal_partial_sums(lam: &TranslationSet) -> Vec<f64> {
    running(lam.values.iter().filter(|&&v| v != 0.0).map(|v| 1.0 / v.abs()))
}

fn running(it: impl Iterator<Item = f64>) -> Vec<f64> {
    it.scan(0.0, |acc, x| {
        *acc += x;
        Some(*acc)
    })
    .collect()
}

/// `(z - 1) / (z + 1)`, mapping the right half-plane onto the unit disk.
pub fn moebius_map(z: Complex64) -> Result<Complex64> {
    let den = z + 1.0;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::MoebiusPole);
    }
    Ok((z - 1.0) / den)
}

/// `1 - |moebius_map(x)|` for real `x >= 0`, i.e. `2 min(x, 1) / (x + 1)`.
/// Subtracting `|x - 1|` from `x + 1` directly loses everything once `x`
/// passes `1e16`.
pub fn blaschke_deficit(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    2.0 * x.min(1.0) / (x + 1.0)
}

/// Running Blaschke deficit sums over the positive part (zero included,
/// contributing 1) and the reflected negative part.
pub fn blaschke_deficit_sums(lam: &TranslationSet) -> (Vec<f64>, Vec<f64>) {
    let plus = running(
        lam.values
            .iter()
            .filter(|&&v| v >= 0.0)
            .map(|&v| if v == 0.0 { 1.0 } else { blaschke_deficit(v) }),
    );
    let minus = running(lam.values.iter().filter(|&&v| v < 0.0).map(|&v| blaschke_deficit(-v)));
    (plus, minus)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub family: Family,
    pub verdict: Verdict,
    pub partial_sums: Vec<f64>,
    pub blaschke_plus: Vec<f64>,
    pub blaschke_minus: Vec<f64>,
}

pub fn classify(lam: &TranslationSet) -> ClassificationReport {
    let (blaschke_plus, blaschke_minus) = blaschke_deficit_sums(lam);
    ClassificationReport {
        family: lam.family.clone(),
        verdict: lam.family.verdict(),
        partial_sums: reciprocal_partial_sums(lam),
        blaschke_plus,
        blaschke_minus,
    }
}
