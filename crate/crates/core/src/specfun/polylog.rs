//! Polylogarithms on the unit circle and the Lerch transcendent, continued to
//! all real order.
//!
//! The workhorse is the expansion of Li_ν(e^μ) about μ = 0 (μ = iθ pure
//! imaginary here):
//!
//!   Li_ν(e^μ) = Γ(1-ν)(-μ)^{ν-1} + Σ_{k≥0} ζ(ν-k) μ^k / k!,   |μ| < 2π,
//!
//! with the log-corrected variant at positive integer ν and Eulerian rational
//! forms at non-positive integer ν. Reflecting θ into (0, π] keeps the term
//! ratio below 1/2, so the expansion is uniformly geometric — in particular it
//! is analytic through ν = 0, where the Casimir evaluations live and where the
//! raw Jonquière/Hurwitz form degenerates.

use super::gamma::gamma_unchecked;
use super::zeta::{hurwitz_zeta_value, riemann_zeta_value, POLE_TOL};
use crate::error::{Result, SpecError};
use num_complex::Complex64;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Li_ν(e^{iθ}) for real ν. θ is reduced mod 2π; θ ≡ 0 requires ν > 1.
pub fn polylog_unit_circle(nu: f64, theta: f64) -> Result<Complex64> {
    let mut t = theta.rem_euclid(TWO_PI);
    if t.abs() < 1e-14 || (TWO_PI - t) < 1e-14 {
        if nu > 1.0 + POLE_TOL {
            return Ok(Complex64::new(riemann_zeta_value(nu), 0.0));
        }
        return Err(SpecError::Divergent(format!(
            "Li_nu(1) diverges for nu = {nu} <= 1"
        )));
    }
    let conjugate = t > std::f64::consts::PI;
    if conjugate {
        t = TWO_PI - t;
    }
    let v = polylog_exp_expansion(nu, t);
    Ok(if conjugate { v.conj() } else { v })
}

/// Expansion about z = 1 for θ ∈ (0, π].
fn polylog_exp_expansion(nu: f64, theta: f64) -> Complex64 {
    let n_round = nu.round();
    if (nu - n_round).abs() < POLE_TOL {
        let n = n_round as i64;
        if n <= 0 {
            return polylog_nonpositive_int((-n) as usize, theta);
        }
        return polylog_positive_int(n as usize, theta);
    }
    let mu = Complex64::new(0.0, theta);
    // (-μ)^{ν-1} = (θ e^{-iπ/2})^{ν-1}
    let principal = Complex64::from_polar(
        theta.powf(nu - 1.0),
        -std::f64::consts::FRAC_PI_2 * (nu - 1.0),
    ) * gamma_unchecked(1.0 - nu);
    principal + zeta_mu_series(nu, mu, None)
}

/// Σ_{k≥0, k≠skip} ζ(ν-k) μ^k / k!
fn zeta_mu_series(nu: f64, mu: Complex64, skip: Option<usize>) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mu_pow = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    let mut small_streak = 0;
    for k in 0..200usize {
        if k > 0 {
            mu_pow *= mu;
            fact *= k as f64;
        }
        if Some(k) == skip {
            continue;
        }
        let term = riemann_zeta_value(nu - k as f64) * mu_pow / fact;
        sum += term;
        // ζ's trivial zeros null out individual terms; require a run of
        // small terms before stopping.
        if k > 4 && term.norm() < 1e-17 * sum.norm().max(1e-300) {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    sum
}

/// Li_n(e^{iθ}) for integer n ≥ 1:
/// μ^{n-1}/(n-1)! (H_{n-1} - ln(-μ)) + Σ_{k≠n-1} ζ(n-k) μ^k/k!.
fn polylog_positive_int(n: usize, theta: f64) -> Complex64 {
    let mu = Complex64::new(0.0, theta);
    // ln(-μ) = ln θ - iπ/2
    let ln_neg_mu = Complex64::new(theta.ln(), -std::f64::consts::FRAC_PI_2);
    let h: f64 = (1..n).map(|k| 1.0 / k as f64).sum();
    let mut fact = 1.0;
    for k in 1..n {
        fact *= k as f64;
    }
    let log_part = mu.powu((n - 1) as u32) / fact * (Complex64::new(h, 0.0) - ln_neg_mu);
    log_part + zeta_mu_series(n as f64, mu, Some(n - 1))
}

/// Li_{-n}(z) for n ≥ 0 via the Eulerian-number rational form.
fn polylog_nonpositive_int(n: usize, theta: f64) -> Complex64 {
    let z = Complex64::from_polar(1.0, theta);
    if n == 0 {
        return z / (Complex64::new(1.0, 0.0) - z);
    }
    // Li_{-n}(z) = (Σ_{i=0}^{n-1} A(n,i) z^{n-i}) / (1-z)^{n+1}
    let a = eulerian_row(n);
    let mut num = Complex64::new(0.0, 0.0);
    for (i, &c) in a.iter().enumerate() {
        num += c * z.powu((n - i) as u32);
    }
    num / (Complex64::new(1.0, 0.0) - z).powu((n + 1) as u32)
}

fn eulerian_row(n: usize) -> Vec<f64> {
    // A(n, i) by the triangle recurrence; n stays small (|ν| ≤ ~30).
    let mut row = vec![1.0];
    for m in 2..=n {
        let mut next = vec![0.0; m];
        for i in 0..m {
            let left = if i > 0 { row.get(i - 1).copied().unwrap_or(0.0) } else { 0.0 };
            let here = row.get(i).copied().unwrap_or(0.0);
            next[i] = (i as f64 + 1.0) * here + (m - i) as f64 * left;
        }
        row = next;
    }
    row
}

/// The literal Jonquière/Hurwitz inversion,
/// Li_ν(e^{2πix}) = Γ(1-ν)(2π)^{ν-1}[e^{iπ(1-ν)/2} ζ(1-ν, x)
///                + e^{-iπ(1-ν)/2} ζ(1-ν, 1-x)],  0 < x < 1,
/// valid away from ν ∈ {0, 1, 2, ...}. Kept as an independent cross-check
/// route for the primary expansion.
pub fn polylog_jonquiere(nu: f64, theta: f64) -> Result<Complex64> {
    let x = theta.rem_euclid(TWO_PI) / TWO_PI;
    if !(x > 0.0 && x < 1.0) {
        return Err(SpecError::Divergent("jonquiere needs z != 1".into()));
    }
    if (nu - nu.round()).abs() < 1e-6 && nu.round() >= 0.0 {
        return Err(SpecError::Unsupported(
            "jonquiere route degenerates at non-negative integer nu".into(),
        ));
    }
    let g = gamma_unchecked(1.0 - nu) * TWO_PI.powf(nu - 1.0);
    let phase = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2 * (1.0 - nu));
    let za = hurwitz_zeta_value(1.0 - nu, x);
    let zb = hurwitz_zeta_value(1.0 - nu, 1.0 - x);
    Ok(g * (phase * za + phase.conj() * zb))
}

/// Lerch transcendent Φ(z,s,a) = Σ_{k≥0} z^k/(a+k)^s for |z| = 1, continued
/// in s where the paper needs it:
///   z = 1      → ζ(s,a)
///   z = -1     → 2^{-s}[ζ(s,a/2) - ζ(s,(a+1)/2)]
///   2a integer → reduction to unit-circle polylogs of z^{1/2}
///   e^{iθ}, θ/2π = p/q (q ≤ 64) → q-term Hurwitz split
///   otherwise  → direct series for s > 1, Unsupported below.
pub fn lerch_phi(z: Complex64, s: f64, a: f64) -> Result<Complex64> {
    if a <= 0.0 {
        return Err(SpecError::InvalidParameter(format!(
            "lerch_phi requires a > 0, got {a}"
        )));
    }
    if (z.norm() - 1.0).abs() > 1e-10 {
        return Err(SpecError::Unsupported(
            "lerch_phi implemented on the unit circle only".into(),
        ));
    }
    let theta = z.arg().rem_euclid(TWO_PI);
    // z = 1
    if theta.abs() < 1e-13 || (TWO_PI - theta) < 1e-13 {
        if s > 1.0 + POLE_TOL {
            return Ok(Complex64::new(hurwitz_zeta_value(s, a), 0.0));
        }
        return Err(SpecError::Divergent(format!(
            "Phi(1, s, a) diverges for s = {s} <= 1"
        )));
    }
    // z = -1
    if (theta - std::f64::consts::PI).abs() < 1e-13 {
        let v = 2f64.powf(-s)
            * (hurwitz_zeta_value(s, 0.5 * a) - hurwitz_zeta_value(s, 0.5 * (a + 1.0)));
        return Ok(Complex64::new(v, 0.0));
    }
    // half-integer a: Φ(z,s,p/2) = 2^s w^{-p} Σ_{j≥p, j≡p(2)} w^j/j^s, w² = z
    let p2 = 2.0 * a;
    if (p2 - p2.round()).abs() < 1e-12 && p2.round() >= 1.0 {
        let p = p2.round() as u32;
        let half_theta = 0.5 * theta;
        let lp = polylog_unit_circle(s, half_theta)?;
        let lm = polylog_unit_circle(s, half_theta + std::f64::consts::PI)?;
        // parity sums over ALL j ≥ 1 of matching parity
        let full = if p % 2 == 1 {
            0.5 * (lp - lm)
        } else {
            0.5 * (lp + lm)
        };
        // strip j < p of the right parity
        let w = Complex64::from_polar(1.0, half_theta);
        let mut head = Complex64::new(0.0, 0.0);
        let mut j = if p % 2 == 1 { 1 } else { 2 };
        while j < p {
            head += w.powu(j) / (j as f64).powf(s);
            j += 2;
        }
        let w_mp = Complex64::from_polar(1.0, -half_theta * p as f64);
        return Ok(2f64.powf(s) * w_mp * (full - head));
    }
    // rational phase: z^q = 1
    if let Some((p, q)) = rational_phase(theta) {
        let _ = p;
        let mut sum = Complex64::new(0.0, 0.0);
        for r in 0..q {
            let zr = Complex64::from_polar(1.0, theta * r as f64);
            sum += zr * hurwitz_zeta_value(s, (a + r as f64) / q as f64);
        }
        return Ok(sum * (q as f64).powf(-s));
    }
    if s > 1.0 + 1e-6 {
        return Ok(lerch_direct_accelerated(z, s, a));
    }
    Err(SpecError::Unsupported(format!(
        "lerch_phi continuation for irrational phase with a = {a}, s = {s} <= 1"
    )))
}

fn rational_phase(theta: f64) -> Option<(u32, u32)> {
    let x = theta / TWO_PI;
    for q in 1..=64u32 {
        let p = (x * q as f64).round();
        if (x * q as f64 - p).abs() < 1e-12 * q as f64 {
            return Some((p as u32, q));
        }
    }
    None
}

/// Direct series with iterated Abel (summation-by-parts) tail corrections;
/// converges for s > 1 on |z| = 1, z ≠ 1.
fn lerch_direct_accelerated(z: Complex64, s: f64, a: f64) -> Complex64 {
    let n = 4000usize;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 0..n {
        sum += zk / (a + k as f64).powf(s);
        zk *= z;
    }
    // Tail Σ_{k≥N} z^k f(k), f = (a+k)^{-s}: Abel sweeps with exact forward
    // differences of f at N; each sweep shrinks the remainder by ~s/(aN).
    let geom = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - z);
    let kn = n as f64;
    let f0 = (a + kn).powf(-s);
    let f1 = (a + kn + 1.0).powf(-s);
    let f2 = (a + kn + 2.0).powf(-s);
    let f3 = (a + kn + 3.0).powf(-s);
    let d1 = f1 - f0;
    let d2 = f2 - 2.0 * f1 + f0;
    let d3 = f3 - 3.0 * f2 + 3.0 * f1 - f0;
    // Tail = z^N/(1-z) [ f_N + (z/(1-z)) Δf_N + (z/(1-z))² Δ²f_N + ... ]
    let mut tail = Complex64::new(0.0, 0.0);
    let mut coeff = zk * geom;
    for d in [f0, d1, d2, d3] {
        tail += coeff * d;
        coeff *= z * geom;
    }
    sum + tail
}
