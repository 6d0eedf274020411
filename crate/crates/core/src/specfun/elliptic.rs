//! Incomplete elliptic integral of the second kind via Carlson symmetric
//! forms (R_F, R_D with the standard duplication iteration).

use crate::error::{Result, SpecError};

fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    for _ in 0..500 {
        let lam = x.sqrt() * y.sqrt() + y.sqrt() * z.sqrt() + z.sqrt() * x.sqrt();
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + z) / 3.0;
        let (dx, dy, dz) = ((mu - x) / mu, (mu - y) / mu, (mu - z) / mu);
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-9 {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0)
                / mu.sqrt();
        }
    }
    f64::NAN
}

fn carlson_rd(mut x: f64, mut y: f64, mut z: f64) -> f64 {
    let mut sum = 0.0;
    let mut fac = 1.0;
    for _ in 0..500 {
        let lam = x.sqrt() * y.sqrt() + y.sqrt() * z.sqrt() + z.sqrt() * x.sqrt();
        sum += fac / (z.sqrt() * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + 3.0 * z) / 5.0;
        let (dx, dy, dz) = ((mu - x) / mu, (mu - y) / mu, (mu - z) / mu);
        if dx.abs().max(dy.abs()).max(dz.abs()) < 1e-9 {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            let s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee)
                + dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea));
            return 3.0 * sum + fac * (1.0 + s) / (mu * mu.sqrt());
        }
    }
    f64::NAN
}

/// Complete E(m) = ∫_0^{π/2} √(1-m sin²θ) dθ.
pub fn elliptic_e_complete(m: f64) -> Result<f64> {
    if m > 1.0 {
        return Err(SpecError::InvalidParameter(format!(
            "elliptic_e_complete requires m <= 1, got {m}"
        )));
    }
    if (m - 1.0).abs() < 1e-15 {
        return Ok(1.0);
    }
    Ok(carlson_rf(0.0, 1.0 - m, 1.0) - m / 3.0 * carlson_rd(0.0, 1.0 - m, 1.0))
}

/// Incomplete E(φ | m) = ∫_0^φ √(1-m sin²θ) dθ for any real φ with
/// m sin²φ ≤ 1, extended by the quasi-period E(φ+kπ) = E(φ) + 2kE(m).
pub fn elliptic_e_incomplete(phi: f64, m: f64) -> Result<f64> {
    let n = (phi / std::f64::consts::PI).round();
    let phi_r = phi - n * std::f64::consts::PI; // in [-π/2, π/2]
    let s = phi_r.sin();
    if m * s * s > 1.0 + 1e-12 {
        return Err(SpecError::InvalidParameter(format!(
            "elliptic_e_incomplete domain violation: m sin^2(phi) = {} > 1",
            m * s * s
        )));
    }
    let base = if n != 0.0 {
        2.0 * n * elliptic_e_complete(m)?
    } else {
        0.0
    };
    if phi_r == 0.0 {
        return Ok(base);
    }
    let sa = s.abs();
    let c2 = 1.0 - sa * sa;
    let q = (1.0 - m * sa * sa).max(0.0);
    if c2 < 1e-15 && q < 1e-15 {
        // E(±π/2 | 1) = ±1; R_F(0,0,1) itself diverges.
        return Ok(base + s.signum());
    }
    let val = sa * carlson_rf(c2, q, 1.0) - m / 3.0 * sa * sa * sa * carlson_rd(c2, q, 1.0);
    Ok(base + val * s.signum())
}
