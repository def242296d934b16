use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Magnitude above which an exponent is considered out of double range.
pub const EXPONENT_GUARD: f64 = 700.0;

/// `f(t) = q(t) * exp(-c t^2)` with `q(t) = sum_j alpha_j t^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGaussianGenerator {
    alpha: Vec<Complex64>,
    c: f64,
}

impl PolyGaussianGenerator {
    pub fn new(alpha: Vec<Complex64>, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return invalid(format!("Gaussian rate must be positive and finite, got {c}"));
        }
        if alpha.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return invalid("polynomial coefficients must be finite");
        }
        if alpha.iter().all(|a| *a == Complex64::new(0.0, 0.0)) {
            return invalid("polynomial must be nonzero");
        }
        Ok(Self { alpha, c })
    }

    /// Plain Gaussian `exp(-c t^2)`.
    pub fn gaussian(c: f64) -> Result<Self> {
        Self::new(vec![Complex64::new(1.0, 0.0)], c)
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn rate(&self) -> f64 {
        self.c
    }

    pub fn poly(&self, t: f64) -> Complex64 {
        self.alpha
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, a| acc * t + a)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.poly(t) * (-self.c * t * t).exp()
    }

    /// True when `q` is even with real coefficients.
    pub fn is_even_real(&self) -> bool {
        self.alpha
            .iter()
            .enumerate()
            .all(|(j, a)| a.im == 0.0 && (j % 2 == 0 || a.re == 0.0))
    }
}

/// Linearly interpolated samples of an arbitrary function; zero outside the
/// tabulated range.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedGenerator {
    xs: Vec<f64>,
    values: Vec<Complex64>,
}

impl TabulatedGenerator {
    pub fn new(xs: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if xs.len() < 2 {
            return invalid("tabulated generator needs at least two nodes");
        }
        if xs.len() != values.len() {
            return invalid(format!(
                "tabulated generator: {} nodes but {} values",
                xs.len(),
                values.len()
            ));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) || xs.iter().any(|x| !x.is_finite()) {
            return invalid("tabulated nodes must be finite and strictly increasing");
        }
        Ok(Self { xs, values })
    }

    /// Tabulate `f` on `count` uniform nodes of `[lo, hi]`.
    pub fn from_fn(lo: f64, hi: f64, count: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if count < 2 || !(lo < hi) {
            return invalid("tabulation needs lo < hi and at least two nodes");
        }
        let h = (hi - lo) / (count - 1) as f64;
        let xs: Vec<f64> = (0..count).map(|i| lo + i as f64 * h).collect();
        let values = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, values)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let n = self.xs.len();
        if t < self.xs[0] || t > self.xs[n - 1] || t.is_nan() {
            return Complex64::new(0.0, 0.0);
        }
        let i = self.xs.partition_point(|&x| x <= t);
        if i == n {
            return self.values[n - 1];
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let w = (t - x0) / (x1 - x0);
        self.values[i - 1] * (1.0 - w) + self.values[i] * w
    }
}

/// Function whose translates span the systems under study.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    PolyGaussian(PolyGaussianGenerator),
    Tabulated(TabulatedGenerator),
}

impl From<PolyGaussianGenerator> for Generator {
    fn from(g: PolyGaussianGenerator) -> Self {
        Generator::PolyGaussian(g)
    }
}

impl From<TabulatedGenerator> for Generator {
    fn from(g: TabulatedGenerator) -> Self {
        Generator::Tabulated(g)
    }
}

impl Generator {
    pub fn eval(&self, t: f64) -> Complex64 {
        match self {
            Generator::PolyGaussian(g) => g.eval(t),
            Generator::Tabulated(g) => g.eval(t),
        }
    }

    /// `(T_s f)(t) = f(t - s)`.
    pub fn eval_shift(&self, s: f64, t: f64) -> Complex64 {
        self.eval(t - s)
    }

    /// Multiply the generator by a nonzero constant.
    pub fn scaled(&self, k: Complex64) -> Result<Self> {
        if k == Complex64::new(0.0, 0.0) {
            return invalid("scale factor must be nonzero");
        }
        Ok(match self {
            Generator::PolyGaussian(g) => Generator::PolyGaussian(PolyGaussianGenerator::new(
                g.alpha.iter().map(|a| a * k).collect(),
                g.c,
            )?),
            Generator::Tabulated(g) => Generator::Tabulated(TabulatedGenerator::new(
                g.xs.clone(),
                g.values.iter().map(|v| v * k).collect(),
            )?),
        })
    }

    pub fn is_even_real(&self) -> bool {
        match self {
            Generator::PolyGaussian(g) => g.is_even_real(),
            Generator::Tabulated(_) => false,
        }
    }

    /// Samples of `T_lambda f` at `points`, divided by their maximum modulus.
    ///
    /// Returns the normalized samples and the natural log of the maximum
    /// modulus. For PolyGaussian generators the Gaussian factor is evaluated
    /// relative to its largest value on `points`, so translates far outside
    /// the exponent range still produce a well-formed unit column.
    pub fn unit_translate(&self, points: &[f64], lambda: f64) -> Result<(Vec<Complex64>, f64)> {
        if points.is_empty() {
            return Err(Error::Empty("sample points"));
        }
        let (mut samples, log_offset) = match self {
            Generator::PolyGaussian(g) => {
                let min_sq = points
                    .iter()
                    .map(|t| (t - lambda) * (t - lambda))
                    .fold(f64::INFINITY, f64::min);
                let samples = points
                    .iter()
                    .map(|&t| {
                        let u = t - lambda;
                        g.poly(u) * (-g.c * (u * u - min_sq)).exp()
                    })
                    .collect::<Vec<_>>();
                (samples, -g.c * min_sq)
            }
            Generator::Tabulated(g) => (points.iter().map(|&t| g.eval(t - lambda)).collect(), 0.0),
        };
        let peak = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(peak > 0.0) || !peak.is_finite() {
            return Err(Error::ZeroColumn { lambda });
        }
        samples.iter_mut().for_each(|z| *z /= peak);
        Ok((samples, peak.ln() + log_offset))
    }
}

/// The three factors of `exp(-c (t - lambda)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftFactors {
    /// `exp(-c t^2)`
    pub head: f64,
    /// `exp(2 c t lambda)`, `None` when the exponent leaves the double range.
    pub cross: Option<f64>,
    /// `exp(-c lambda^2)`
    pub tail: f64,
}

impl ShiftFactors {
    pub fn overflow(&self) -> bool {
        self.cross.is_none()
    }

    pub fn product(&self) -> Option<f64> {
        self.cross.map(|x| self.head * x * self.tail)
    }
}

pub fn gaussian_shift_factorization(c: f64, t: f64, lambda: f64) -> Result<ShiftFactors> {
    if !(c > 0.0) {
        return invalid(format!("Gaussian rate must be positive, got {c}"));
    }
    let cross_exp = 2.0 * c * t * lambda;
    Ok(ShiftFactors {
        head: (-c * t * t).exp(),
        cross: (cross_exp.abs() <= EXPONENT_GUARD).then(|| cross_exp.exp()),
        tail: (-c * lambda * lambda).exp(),
    })
}
