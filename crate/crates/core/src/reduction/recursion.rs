use num_complex::Complex64;

use super::multipoly::MultiPoly;
use crate::core_fn::{Generator, Grid};
use crate::error::{invalid, Error, Result};

/// Default cap on monomials per polynomial.
pub const TERM_CAP: usize = 200_000;
/// Coefficient magnitude treated as numerical divergence.
pub const COEFF_OVERFLOW: f64 = 1e300;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `[x1, ..., xn]`.
pub fn poly_base(n: usize) -> Result<Vec<MultiPoly>> {
    if n < 1 {
        return invalid("poly_base needs n >= 1");
    }
    (0..n).map(|j| MultiPoly::var(n, j)).collect()
}

/// One level of the recursion with the default term cap.
pub fn poly_step(p: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    poly_step_capped(p, TERM_CAP)
}

/// `p'_j = p_{j+1} - p_1 x_j` for `j < n`, `p'_n = -p_1 x_n`.
pub fn poly_step_capped(p: &[MultiPoly], cap: usize) -> Result<Vec<MultiPoly>> {
    let n = p.len();
    if n == 0 {
        return invalid("poly_step needs a nonempty family");
    }
    if p.iter().any(|q| q.n_vars() != n) {
        return invalid("every polynomial of the family must have n variables");
    }
    let head = &p[0];
    let next: Vec<MultiPoly> = (0..n)
        .map(|j| {
            let prod = head.mul_var(j);
            if j + 1 < n {
                p[j + 1].sub(&prod)
            } else {
                prod.neg()
            }
        })
        .collect();
    if let Some(big) = next.iter().find(|q| q.term_count() > cap) {
        return Err(Error::TermCap {
            terms: big.term_count(),
            cap,
        });
    }
    Ok(next)
}

/// Families for levels `1..=ell`.
pub fn poly_levels(n: usize, ell: usize) -> Result<Vec<Vec<MultiPoly>>> {
    if ell < 1 {
        return invalid("level must be >= 1");
    }
    let mut levels = vec![poly_base(n)?];
    for _ in 1..ell {
        let next = poly_step(levels.last().expect("nonempty"))?;
        levels.push(next);
    }
    Ok(levels)
}

/// Family at level `ell`.
pub fn poly_family(n: usize, ell: usize) -> Result<Vec<MultiPoly>> {
    Ok(poly_levels(n, ell)?.pop().expect("nonempty"))
}

/// Levels `1..=ell` as text, one `p[l,j] = <canonical form>` line each.
pub fn poly_listing(n: usize, ell: usize) -> Result<String> {
    let mut text = String::new();
    for (l, family) in poly_levels(n, ell)?.iter().enumerate() {
        for (j, p) in family.iter().enumerate() {
            text.push_str(&format!("p[{},{}] = {p}\n", l + 1, j + 1));
        }
    }
    Ok(text)
}

/// `q'_j = q_{j+1} - q_1 c_j` for `j < n`, `q'_n = -q_1 c_n`.
pub fn coeff_step(q: &[Complex64], c: &[Complex64]) -> Result<Vec<Complex64>> {
    if q.len() != c.len() || q.is_empty() {
        return invalid(format!(
            "coefficient step needs equal nonempty lengths, got {} and {}",
            q.len(),
            c.len()
        ));
    }
    let n = q.len();
    let q1 = q[0];
    let next: Vec<Complex64> = (0..n)
        .map(|j| if j + 1 < n { q[j + 1] - q1 * c[j] } else { -q1 * c[j] })
        .collect();
    if let Some(bad) = next.iter().find(|z| !(z.norm() <= COEFF_OVERFLOW)) {
        return Err(Error::CoefficientOverflow { magnitude: bad.norm() });
    }
    Ok(next)
}

/// A nonzero element `F = sum_{k=m0}^{m} d_k T_{ak+b} f` of the span of
/// `f`'s translates along `aZ + b`, normalized to
/// `F0 = T_b f + sum_j c_j T_{aj+b} f`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionProblem {
    generator: Generator,
    a: f64,
    b: f64,
    m0: i64,
    d: Vec<Complex64>,
    c: Vec<Complex64>,
}

impl ReductionProblem {
    /// `d` holds `d_{m0}, ..., d_m`; needs `d_{m0} != 0` and `m > m0`.
    pub fn new(generator: Generator, a: f64, b: f64, m0: i64, d: Vec<Complex64>) -> Result<Self> {
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return invalid(format!("reduction needs finite a != 0 and finite b, got a={a}, b={b}"));
        }
        if d.len() < 2 {
            return invalid("reduction needs at least two coefficients (n >= 1)");
        }
        if d[0] == ZERO {
            return invalid("leading coefficient d_{m0} must be nonzero");
        }
        if d.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid("coefficients must be finite");
        }
        let c = d[1..].iter().map(|dk| dk / d[0]).collect::<Vec<_>>();
        if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid("normalized coefficients overflow");
        }
        Ok(Self {
            generator,
            a,
            b,
            m0,
            d,
            c,
        })
    }

    /// Problem with `F = F0` directly: `m0 = 0`, `d = (1, c_1, ..., c_n)`.
    pub fn from_normalized(generator: Generator, a: f64, b: f64, c: Vec<Complex64>) -> Result<Self> {
        let mut d = vec![Complex64::new(1.0, 0.0)];
        d.extend(c);
        Self::new(generator, a, b, 0, d)
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn c(&self) -> &[Complex64] {
        &self.c
    }

    /// `F(t)`.
    pub fn eval_f(&self, t: f64) -> Complex64 {
        self.d
            .iter()
            .enumerate()
            .map(|(i, dk)| {
                dk * self
                    .generator
                    .eval_shift(self.a * (self.m0 + i as i64) as f64 + self.b, t)
            })
            .sum()
    }

    /// `F0(t) = f(t - b) + sum_j c_j f(t - (aj + b))`.
    pub fn eval_f0(&self, t: f64) -> Complex64 {
        self.generator.eval_shift(self.b, t)
            + self
                .c
                .iter()
                .enumerate()
                .map(|(j, cj)| cj * self.generator.eval_shift(self.a * (j + 1) as f64 + self.b, t))
                .sum::<Complex64>()
    }
}

/// Level `ell`, evaluated coefficients `q_j = p_{ell,j}(c)` and the `q_1`
/// values of the earlier levels.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionState {
    pub ell: usize,
    pub q: Vec<Complex64>,
    pub q1_history: Vec<Complex64>,
}

impl ReductionState {
    pub fn initial(problem: &ReductionProblem) -> Self {
        Self {
            ell: 1,
            q: problem.c.clone(),
            q1_history: Vec::new(),
        }
    }

    pub fn advance(&mut self, problem: &ReductionProblem) -> Result<()> {
        let next = coeff_step(&self.q, &problem.c)?;
        self.q1_history.push(self.q[0]);
        self.q = next;
        self.ell += 1;
        Ok(())
    }

    fn check(&self, problem: &ReductionProblem) -> Result<()> {
        if self.q.len() != problem.n() {
            return Err(Error::InconsistentState(format!(
                "state has {} coefficients, problem has n = {}",
                self.q.len(),
                problem.n()
            )));
        }
        if self.ell == 0 {
            return Err(Error::InconsistentState("level must be >= 1".into()));
        }
        Ok(())
    }
}

/// `q * f(t - s)`, dropping contributions whose translate underflows.
fn term(g: &Generator, q: Complex64, s: f64, t: f64) -> Complex64 {
    let v = g.eval_shift(s, t);
    if v == ZERO {
        return ZERO;
    }
    let prod = q * v;
    if prod.re.is_finite() && prod.im.is_finite() {
        prod
    } else {
        ZERO
    }
}

/// Samples of `Q_ell = sum_j q_j T_{a(ell+j-1)+b} f`.
pub fn remainder(problem: &ReductionProblem, state: &ReductionState, grid: &Grid) -> Result<Vec<Complex64>> {
    state.check(problem)?;
    let g = &problem.generator;
    Ok(grid
        .points()
        .iter()
        .map(|&t| {
            state
                .q
                .iter()
                .enumerate()
                .map(|(j, &qj)| term(g, qj, problem.a * (state.ell + j) as f64 + problem.b, t))
                .sum()
        })
        .collect())
}

/// Samples of `A_ell = T_b f + Q_ell`.
#[allow(non_snake_case)]
pub fn assemble_A(problem: &ReductionProblem, state: &ReductionState, grid: &Grid) -> Result<Vec<Complex64>> {
    let q = remainder(problem, state, grid)?;
    Ok(grid
        .points()
        .iter()
        .zip(q)
        .map(|(&t, qv)| problem.generator.eval_shift(problem.b, t) + qv)
        .collect())
}

/// Weights `beta` with `A_ell = sum_{k=0}^{ell-1} beta_k T_{ak} F0`.
pub fn span_representation(problem: &ReductionProblem, state: &ReductionState) -> Result<Vec<Complex64>> {
    state.check(problem)?;
    if state.q1_history.len() + 1 != state.ell {
        return Err(Error::InconsistentState(format!(
            "level {} needs {} recorded q1 values, found {}",
            state.ell,
            state.ell - 1,
            state.q1_history.len()
        )));
    }
    let mut beta = vec![Complex64::new(1.0, 0.0)];
    beta.extend(state.q1_history.iter().map(|q1| -q1));
    Ok(beta)
}

/// Samples of `sum_k beta_k T_{a(k + offset)} F0`.
pub fn span_sum(problem: &ReductionProblem, beta: &[Complex64], offset: i64, grid: &Grid) -> Vec<Complex64> {
    grid.points()
        .iter()
        .map(|&t| {
            beta.iter()
                .enumerate()
                .filter(|(_, bk)| **bk != ZERO)
                .map(|(k, bk)| bk * problem.eval_f0(t - problem.a * (k as i64 + offset) as f64))
                .sum()
        })
        .collect()
}

/// `max_j |p_{ell,j}(c) - q_j^{(ell)}| / max(1, max_j |q_j^{(ell)}|)`.
pub fn poly_vs_coeff_consistency(n: usize, ell: usize, c: &[Complex64]) -> Result<f64> {
    if c.len() != n {
        return invalid(format!("c has {} entries, expected n = {n}", c.len()));
    }
    let polys = poly_family(n, ell)?;
    let mut q = c.to_vec();
    for _ in 1..ell {
        q = coeff_step(&q, c)?;
    }
    let scale = q.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut worst = 0.0f64;
    for (p, qj) in polys.iter().zip(&q) {
        worst = worst.max((p.eval(c)? - qj).norm());
    }
    Ok(worst / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_fn::{Interval, PolyGaussianGenerator};
    use num_bigint::BigInt;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn gaussian_problem(c: Vec<Complex64>) -> ReductionProblem {
        ReductionProblem::from_normalized(PolyGaussianGenerator::gaussian(1.0).unwrap().into(), 1.0, 0.0, c).unwrap()
    }

    #[test]
    fn base_examples() {
        assert!(poly_base(0).is_err());
        assert_eq!(poly_base(1).unwrap()[0].to_string(), "1*x1^1");
        let b = poly_base(2).unwrap();
        assert_eq!(b[0].to_string(), "1*x1^1*x2^0");
        assert_eq!(b[1].to_string(), "1*x1^0*x2^1");
        for p in poly_base(3).unwrap() {
            assert_eq!(p.degree(), 1);
            assert_eq!(p.max_abs_coeff(), BigInt::from(1));
        }
    }

    #[test]
    fn step_examples() {
        let s = poly_step(&poly_base(2).unwrap()).unwrap();
        // x2 - x1^2 and -x1 x2
        assert_eq!(s[0].to_string(), "-1*x1^2*x2^0 + 1*x1^0*x2^1");
        assert_eq!(s[1].to_string(), "-1*x1^1*x2^1");
        let s = poly_step(&poly_base(1).unwrap()).unwrap();
        assert_eq!(s[0].to_string(), "-1*x1^2");
    }

    #[test]
    fn step_at_most_doubles_coefficients() {
        let mut fam = poly_base(3).unwrap();
        for _ in 0..8 {
            let prev = fam.iter().map(MultiPoly::max_abs_coeff).max().unwrap();
            fam = poly_step(&fam).unwrap();
            let next = fam.iter().map(MultiPoly::max_abs_coeff).max().unwrap();
            assert!(next <= prev * 2);
        }
    }

    #[test]
    fn term_cap_is_enforced() {
        let fam = poly_levels(3, 6).unwrap().pop().unwrap();
        let err = poly_step_capped(&fam, 5).unwrap_err();
        assert!(matches!(err, Error::TermCap { cap: 5, .. }));
    }

    #[test]
    fn coeff_step_examples() {
        assert_eq!(coeff_step(&[re(2.0)], &[re(2.0)]).unwrap(), vec![re(-4.0)]);
        assert_eq!(
            coeff_step(&[re(1.0), re(1.0)], &[re(1.0), re(1.0)]).unwrap(),
            vec![re(0.0), re(-1.0)]
        );
        assert_eq!(
            coeff_step(&[re(0.0), re(0.0)], &[re(3.0), re(-2.0)]).unwrap(),
            vec![re(0.0), re(0.0)]
        );
        assert!(coeff_step(&[re(1.0)], &[re(1.0), re(2.0)]).is_err());
        assert!(matches!(
            coeff_step(&[re(1e200)], &[re(1e200)]),
            Err(Error::CoefficientOverflow { .. })
        ));
    }

    #[test]
    fn n1_iteration_closed_form() {
        let mut q = vec![re(2.0)];
        for ell in 1..=10 {
            let expected = (-1.0f64).powi(ell - 1) * 2f64.powi(ell);
            assert_eq!(q[0], re(expected));
            q = coeff_step(&q, &[re(2.0)]).unwrap();
        }
    }

    #[test]
    fn problem_normalization() {
        let g: Generator = PolyGaussianGenerator::gaussian(1.0).unwrap().into();
        let p = ReductionProblem::new(g.clone(), 0.5, 0.25, -2, vec![re(2.0), re(1.0), re(-4.0)]).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.c(), &[re(0.5), re(-2.0)]);
        // F0 = T_{-a m0} F / d_{m0}
        for t in [-1.0, -0.3, 0.0, 0.8] {
            let lhs = p.eval_f0(t);
            let rhs = p.eval_f(t - p.a() * 2.0) / 2.0;
            assert!((lhs - rhs).norm() < 1e-15);
        }
        assert!(ReductionProblem::new(g.clone(), 0.0, 0.0, 0, vec![re(1.0), re(1.0)]).is_err());
        assert!(ReductionProblem::new(g.clone(), 1.0, 0.0, 0, vec![re(0.0), re(1.0)]).is_err());
        assert!(ReductionProblem::new(g, 1.0, 0.0, 0, vec![re(1.0)]).is_err());
    }

    #[test]
    fn assemble_examples() {
        let grid = Grid::uniform(Interval::new(-1.0, 1.0).unwrap(), 21).unwrap();
        let p = gaussian_problem(vec![re(2.0)]);
        let mut s = ReductionState::initial(&p);
        let a1 = assemble_A(&p, &s, &grid).unwrap();
        for (v, &t) in a1.iter().zip(grid.points()) {
            assert!((v - p.eval_f0(t)).norm() < 1e-15);
        }
        s.advance(&p).unwrap();
        s.advance(&p).unwrap();
        assert_eq!(s.q, vec![re(8.0)]);
        let a3 = assemble_A(&p, &s, &grid).unwrap();
        for (v, &t) in a3.iter().zip(grid.points()) {
            let expected = (-t * t).exp() + 8.0 * (-(t - 3.0) * (t - 3.0)).exp();
            assert!((v.re - expected).abs() < 1e-14);
        }

        let zero = ReductionState {
            ell: 4,
            q: vec![re(0.0)],
            q1_history: vec![re(0.0); 3],
        };
        let a = assemble_A(&p, &zero, &grid).unwrap();
        for (v, &t) in a.iter().zip(grid.points()) {
            assert_eq!(*v, re((-t * t).exp()));
        }
    }

    #[test]
    fn span_examples() {
        let p = gaussian_problem(vec![re(2.0)]);
        let mut s = ReductionState::initial(&p);
        assert_eq!(span_representation(&p, &s).unwrap(), vec![re(1.0)]);
        s.advance(&p).unwrap();
        s.advance(&p).unwrap();
        assert_eq!(span_representation(&p, &s).unwrap(), vec![re(1.0), re(-2.0), re(4.0)]);

        let broken = ReductionState {
            ell: 3,
            q: vec![re(1.0)],
            q1_history: vec![],
        };
        assert!(matches!(
            span_representation(&p, &broken),
            Err(Error::InconsistentState(_))
        ));
        let wrong_n = ReductionState {
            ell: 1,
            q: vec![re(1.0), re(1.0)],
            q1_history: vec![],
        };
        assert!(assemble_A(
            &p,
            &wrong_n,
            &Grid::uniform(Interval::new(0.0, 1.0).unwrap(), 3).unwrap()
        )
        .is_err());
    }

    #[test]
    fn consistency_examples() {
        assert_eq!(poly_vs_coeff_consistency(2, 1, &[re(0.3), re(-1.0)]).unwrap(), 0.0);
        assert!(poly_vs_coeff_consistency(2, 5, &[re(0.5), re(-0.3)]).unwrap() <= 1e-10);
        let p6 = poly_family(1, 6).unwrap();
        assert_eq!(p6[0].eval(&[re(2.0)]).unwrap(), re(-64.0));
        assert_eq!(poly_vs_coeff_consistency(1, 6, &[re(2.0)]).unwrap(), 0.0);
    }
}
