//! Incomplete beta function B(z, a, 0) for complex first parameter, as it
//! appears in the annulus ΔZ(1) closed form.

use crate::error::{Result, SpecError};
use num_complex::Complex64;

/// B(z, a, b) with b = 0: the convergent series Σ_{k≥0} z^{a+k}/(a+k),
/// z ∈ (0, 1) real, a complex with Re(a) > 0.
pub fn incomplete_beta_complex(z: f64, a: Complex64, b: f64) -> Result<Complex64> {
    if b != 0.0 {
        return Err(SpecError::Unsupported(
            "incomplete beta implemented for the b = 0 branch".into(),
        ));
    }
    if z < 0.0 || z >= 1.0 {
        return Err(SpecError::Divergent(format!(
            "B(z, a, 0) series requires z in [0, 1), got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ln_z = z.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..100_000 {
        let ak = a + k as f64;
        let term = (ak * ln_z).exp() / ak;
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-300) {
            return Ok(sum);
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_at_zero() {
        let v = incomplete_beta_complex(0.0, Complex64::new(1.0, 0.3), 0.0).unwrap();
        assert_eq!(v.norm(), 0.0);
        let w = incomplete_beta_complex(1e-280, Complex64::new(1.0, 0.3), 0.0).unwrap();
        assert!(w.norm() < 1e-270);
    }

    #[test]
    fn log_series_at_half() {
        // B(1/2, 1, 0) = Σ 2^{-(1+k)}/(1+k) = log 2
        let v = incomplete_beta_complex(0.5, Complex64::new(1.0, 0.0), 0.0).unwrap();
        assert!((v.re - (2f64).ln()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-16);
    }

    #[test]
    fn complex_parameter_case() {
        // the ΔZ(1) argument at r = 1/2: z = e^{2π²/ln r}, a = 1 - i ln(r)/π
        let r: f64 = 0.5;
        let lr = r.ln();
        let z = (2.0 * std::f64::consts::PI.powi(2) / lr).exp();
        let a = Complex64::new(1.0, -lr / std::f64::consts::PI);
        let v = incomplete_beta_complex(z, a, 0.0).unwrap();
        // z is ~4e-13, so B ≈ z^a/a to high relative accuracy
        let lead = (a * z.ln()).exp() / a;
        assert!((v - lead).norm() < 1e-12 * lead.norm());
        assert!(incomplete_beta_complex(1.0, a, 0.0).is_err());
    }
}
