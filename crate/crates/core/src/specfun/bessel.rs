//! Bessel functions J_n, Y_n (integer order, via libm's FDLIBM ports) and
//! K_ν for real order (half-integer closed forms, asymptotic expansion, and
//! the cosh integral representation in between).

use crate::error::{Result, SpecError};
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J,
    Y,
    K,
}

/// Bessel values. J and Y take integer order (all the eigenvalue work is at
/// integer angular momentum); K takes any real order.
pub fn bessel(kind: BesselKind, order: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(SpecError::InvalidParameter(format!(
            "bessel requires x > 0, got {x}"
        )));
    }
    match kind {
        BesselKind::J | BesselKind::Y => {
            let n = order.round();
            if (order - n).abs() > 1e-12 {
                return Err(SpecError::Unsupported(
                    "non-integer order J/Y not needed by any formula in scope".into(),
                ));
            }
            let n = n as i32;
            Ok(match kind {
                BesselKind::J => libm::jn(n, x),
                BesselKind::Y => libm::yn(n, x),
                BesselKind::K => unreachable!(),
            })
        }
        BesselKind::K => Ok(bessel_k(order, x)),
    }
}

#[inline]
pub fn bessel_j(n: i32, x: f64) -> f64 {
    libm::jn(n, x)
}

#[inline]
pub fn bessel_y(n: i32, x: f64) -> f64 {
    libm::yn(n, x)
}

/// Modified Bessel K_ν(x), real ν, x > 0.
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    let nu = nu.abs(); // K_{-ν} = K_ν
    let half = nu - 0.5;
    if (half - half.round()).abs() < 1e-12 && half.round() >= 0.0 {
        return bessel_k_half_integer(half.round() as usize, x);
    }
    if x >= 12.0 + 0.5 * nu * nu {
        bessel_k_asymptotic(nu, x)
    } else {
        bessel_k_integral(nu, x)
    }
}

/// K_{m+1/2}(x) by the exact finite expansion, upward recurrence
/// K_{ν+1} = K_{ν-1} + (2ν/x) K_ν (stable for K).
fn bessel_k_half_integer(m: usize, x: f64) -> f64 {
    let base = (std::f64::consts::FRAC_PI_2 / x).sqrt() * (-x).exp();
    if m == 0 {
        return base;
    }
    let mut km1 = base; // K_{1/2}
    let mut k = base * (1.0 + 1.0 / x); // K_{3/2}
    for j in 1..m {
        let nu = j as f64 + 0.5;
        let next = km1 + 2.0 * nu / x * k;
        km1 = k;
        k = next;
    }
    k
}

/// Large-x asymptotic: K_ν(x) ~ √(π/2x) e^{-x} Σ_k a_k(ν)/x^k with
/// a_k = Π_{j≤k} (4ν² - (2j-1)²)/(8 j). Truncated at the smallest term.
fn bessel_k_asymptotic(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let j = (2 * k - 1) as f64;
        term *= (mu - j * j) / (8.0 * k as f64 * x);
        if term.abs() > last {
            break;
        }
        sum += term;
        last = term.abs();
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    (std::f64::consts::FRAC_PI_2 / x).sqrt() * (-x).exp() * sum
}

/// K_ν(x) = ∫_0^∞ e^{-x cosh t} cosh(νt) dt, truncated where the integrand
/// underflows, evaluated by adaptive Gauss–Kronrod.
fn bessel_k_integral(nu: f64, x: f64) -> f64 {
    // e^{-x cosh t} cosh(νt) < 1e-320 once x cosh t - |ν| t > 740.
    let mut hi = 1.0f64;
    while x * hi.cosh() - nu.abs() * hi < 745.0 && hi < 50.0 {
        hi += 0.5;
    }
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    quad::adaptive(&f, 0.0, hi, 1e-14, 1e-14, 2000).value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_first_zero_by_bisection() {
        // DERIVED: bisect J_0 on [2, 3]; the root is 2.404825557695773.
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if bessel_j(0, lo) * bessel_j(0, mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((root - 2.404_825_557_695_773).abs() < 1e-10);
        assert!(bessel(BesselKind::J, 0.0, root).unwrap().abs() < 1e-12);
    }

    #[test]
    fn y0_at_one() {
        assert!((bessel(BesselKind::Y, 0.0, 1.0).unwrap() - 0.088_256_964_215_676_96).abs() < 1e-12);
    }

    #[test]
    fn k_half_closed_form() {
        for x in [0.3, 1.0, 4.5, 20.0] {
            let want = (std::f64::consts::FRAC_PI_2 / x).sqrt() * (-x as f64).exp();
            assert!((bessel_k(0.5, x) - want).abs() < 1e-14 * want.abs().max(1e-300));
        }
    }

    #[test]
    fn k_three_halves_recurrence_vs_integral() {
        for x in [0.8, 3.0, 9.0] {
            let closed = bessel_k(1.5, x);
            let integral = bessel_k_integral(1.5, x);
            assert!(
                (closed - integral).abs() < 1e-11 * closed.abs(),
                "x={x}: {closed} vs {integral}"
            );
        }
    }

    #[test]
    fn k_real_order_matches_routes_at_switchover() {
        // Integral route vs asymptotic route near the hand-off.
        for nu in [0.2, 1.7, 3.3] {
            let x = 12.0 + 0.5 * nu * nu;
            let a = bessel_k_asymptotic(nu, x);
            let b = bessel_k_integral(nu, x);
            assert!((a - b).abs() < 1e-11 * a.abs(), "nu={nu}: {a} vs {b}");
        }
    }

    #[test]
    fn k_even_in_order() {
        assert!((bessel_k(-2.3, 5.0) - bessel_k(2.3, 5.0)).abs() < 1e-16);
    }

    #[test]
    fn jy_cross_product_wronskian() {
        // J_{n+1}(x) Y_n(x) - J_n(x) Y_{n+1}(x) = 2/(πx)
        for (n, x) in [(0, 1.3), (3, 7.7), (10, 25.0)] {
            let w = bessel_j(n + 1, x) * bessel_y(n, x) - bessel_j(n, x) * bessel_y(n + 1, x);
            let want = 2.0 / (std::f64::consts::PI * x);
            assert!((w - want).abs() < 1e-12, "n={n} x={x}");
        }
    }
}
