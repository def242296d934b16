use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Maximum modulus of the samples.
pub fn sup_norm(values: &[Complex64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Empty("sup_norm values"));
    }
    Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max))
}

/// Composite-rectangle `L^p` norm: `(step * sum |v_i|^p)^(1/p)`.
pub fn lp_norm(values: &[Complex64], p: f64, step: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Empty("lp_norm values"));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return invalid(format!("L^p exponent must satisfy 1 <= p < inf, got {p}"));
    }
    if !(step > 0.0) || !step.is_finite() {
        return invalid(format!("quadrature step must be positive, got {step}"));
    }
    // Scale by the sup norm first so large p cannot overflow.
    let peak = sup_norm(values)?;
    if peak == 0.0 {
        return Ok(0.0);
    }
    let sum: f64 = values.iter().map(|v| (v.norm() / peak).powf(p)).sum();
    Ok(peak * (step * sum).powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(sup_norm(&re(&[0.0, 0.0, 0.0])).unwrap(), 0.0);
        assert_eq!(sup_norm(&re(&[1.0, -2.0, 1.0])).unwrap(), 2.0);
        assert!((lp_norm(&re(&[1.0, 1.0]), 2.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_modulus() {
        let v = [Complex64::new(3.0, 4.0)];
        assert_eq!(sup_norm(&v).unwrap(), 5.0);
        assert!((lp_norm(&v, 1.0, 2.0).unwrap() - 10.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(sup_norm(&[]).is_err());
        assert!(lp_norm(&[], 2.0, 1.0).is_err());
        assert!(lp_norm(&re(&[1.0]), 0.5, 1.0).is_err());
        assert!(lp_norm(&re(&[1.0]), 2.0, 0.0).is_err());
    }

    #[test]
    fn large_p_does_not_overflow() {
        let v = re(&[1e200, 1e200]);
        let n = lp_norm(&v, 50.0, 1.0).unwrap();
        assert!((n / 1e200 - 2f64.powf(1.0 / 50.0)).abs() < 1e-12);
    }
}
