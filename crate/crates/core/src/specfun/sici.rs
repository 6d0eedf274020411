//! Sine and cosine integrals Si(x), Ci(x).
//!
//! Power series for x ≤ 4; for larger x the auxiliary functions come from the
//! modified Lentz continued fraction for E₁(ix), using
//!   E₁(ix) = -Ci(x) + i(Si(x) - π/2)  (x > 0).

use crate::error::{Result, SpecError};
use num_complex::Complex64;

use super::gamma::EULER_GAMMA;

/// (Si(x), Ci(x)); Ci requires x > 0, Si is odd and defined for all x.
pub fn sici(x: f64) -> Result<(f64, f64)> {
    if x <= 0.0 {
        return Err(SpecError::InvalidParameter(format!(
            "Ci undefined for x <= 0 (got {x}); use oddness of Si directly"
        )));
    }
    if x <= 4.0 {
        Ok((si_series(x), ci_series(x)))
    } else {
        let e1 = e1_imag_axis_cf(x);
        Ok((std::f64::consts::FRAC_PI_2 + e1.im, -e1.re))
    }
}

fn si_series(x: f64) -> f64 {
    // Σ_k (-1)^k x^{2k+1} / ((2k+1)(2k+1)!); u_k = (-1)^k x^{2k+1}/(2k+1)!.
    let x2 = x * x;
    let mut u = x;
    let mut sum = x;
    for k in 1..60 {
        let k2 = (2 * k) as f64;
        u *= -x2 / (k2 * (k2 + 1.0));
        let add = u / (k2 + 1.0);
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn ci_series(x: f64) -> f64 {
    // γ + ln x + Σ (-1)^k x^{2k} / (2k (2k)!)
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 1..60 {
        let k2 = (2 * k) as f64;
        term *= -x2 / ((k2 - 1.0) * k2);
        let add = term / k2;
        sum += add;
        if add.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// E₁(ix) by the modified Lentz continued fraction
/// E₁(z) = e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...))))).
fn e1_imag_axis_cf(x: f64) -> Complex64 {
    let z = Complex64::new(0.0, x);
    let tiny = Complex64::new(1e-290, 0.0);
    let mut b = z + Complex64::new(1.0, 0.0);
    let mut c = Complex64::new(1e290, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..200 {
        let a = Complex64::new(-((i * i) as f64), 0.0);
        b += Complex64::new(2.0, 0.0);
        d = 1.0 / (a * d + b);
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        let del = c * d;
        h *= del;
        if (del - Complex64::new(1.0, 0.0)).norm() < 1e-16 {
            break;
        }
    }
    (-z).exp() * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    #[test]
    fn si_one_vs_series_oracle() {
        // DERIVED: Taylor series partial sums. Si(1) = 0.946083070367183...
        let (si, _) = sici(1.0).unwrap();
        assert!((si - 0.946_083_070_367_183).abs() < 1e-12);
    }

    #[test]
    fn ci_one_reference() {
        // Ci(1) = γ + ln 1 + Σ ... = 0.337403922900968...
        let (_, ci) = sici(1.0).unwrap();
        assert!((ci - 0.337_403_922_900_968).abs() < 1e-12);
    }

    #[test]
    fn si_large_limit() {
        let (si, _) = sici(1e4).unwrap();
        assert!((si - std::f64::consts::FRAC_PI_2).abs() < 1e-4);
        let (si, _) = sici(1e8).unwrap();
        assert!((si - std::f64::consts::FRAC_PI_2).abs() < 2e-8);
    }

    #[test]
    fn branch_continuity_and_quadrature() {
        // Both branches against adaptive quadrature of the definitions on a
        // window spanning the x = 4 hand-off.
        for x in [3.0f64, 3.9, 4.1, 6.0, 12.0] {
            let (si, ci) = sici(x).unwrap();
            let si_q = quad::adaptive(&|t: f64| if t == 0.0 { 1.0 } else { t.sin() / t }, 0.0, x, 1e-13, 1e-13, 2000).value;
            assert!((si - si_q).abs() < 1e-11, "Si({x}): {si} vs {si_q}");
            // Ci(x) = Ci(3) + ∫_3^x cos t / t dt
            let base = sici(3.0).unwrap().1;
            let ci_q = base + quad::adaptive(&|t: f64| t.cos() / t, 3.0, x, 1e-13, 1e-13, 2000).value;
            assert!((ci - ci_q).abs() < 1e-11, "Ci({x}): {ci} vs {ci_q}");
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(sici(0.0).is_err());
        assert!(sici(-1.0).is_err());
    }
}
