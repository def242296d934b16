use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Sparse polynomial in `n_vars` variables with exact integer coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Result<Self> {
        if n_vars == 0 {
            return invalid("polynomial needs at least one variable");
        }
        Ok(Self {
            n_vars,
            terms: BTreeMap::new(),
        })
    }

    /// The monomial `x_{j+1}` (0-based `j`).
    pub fn var(n_vars: usize, j: usize) -> Result<Self> {
        if j >= n_vars {
            return invalid(format!("variable index {j} out of range for {n_vars} variables"));
        }
        let mut p = Self::zero(n_vars)?;
        let mut e = vec![0; n_vars];
        e[j] = 1;
        p.terms.insert(e, BigInt::from(1));
        Ok(p)
    }

    /// Build from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(n_vars)?;
        for (e, c) in terms {
            if e.len() != n_vars {
                return invalid(format!("exponent vector of length {} for {n_vars} variables", e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry -= c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Multiply by the variable `x_{j+1}` (0-based `j`).
    pub fn mul_var(&self, j: usize) -> Self {
        Self {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[j] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Evaluate at a complex point. Coefficients are converted to `f64`.
    pub fn eval(&self, x: &[Complex64]) -> Result<Complex64> {
        if x.len() != self.n_vars {
            return invalid(format!(
                "evaluation point has {} coordinates, expected {}",
                x.len(),
                self.n_vars
            ));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let coeff = c.to_f64().unwrap_or(f64::INFINITY);
            let mono = e
                .iter()
                .zip(x)
                .fold(Complex64::new(1.0, 0.0), |acc, (&k, &xi)| acc * xi.powu(k));
            sum += mono * coeff;
        }
        Ok(sum)
    }

    /// Terms in descending graded-lexicographic order.
    pub fn grlex_terms(&self) -> Vec<(&[u32], &BigInt)> {
        let mut v: Vec<(&[u32], &BigInt)> = self.terms().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }
}

fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// Canonical text: `coeff*x1^e1*...*xn^en` terms joined by `" + "` in
/// descending graded-lexicographic order; `0` for the zero polynomial.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.grlex_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (j, k) in e.iter().enumerate() {
                write!(f, "*x{}^{}", j + 1, k)?;
            }
        }
        Ok(())
    }
}
