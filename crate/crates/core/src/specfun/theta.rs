//! Jacobi ϑ₃(0, e^{-π²t}) and its t-derivative, with the modular (Poisson)
//! form for small t.

/// ϑ₃(0, e^{-π²t}) = Σ_{n∈ℤ} e^{-π²n²t}, t > 0.
pub fn jacobi_theta3(t: f64) -> f64 {
    assert!(t > 0.0, "theta3 requires t > 0");
    if t >= 0.05 {
        let mut s = 1.0;
        let mut n = 1.0f64;
        loop {
            let term = 2.0 * (-std::f64::consts::PI.powi(2) * n * n * t).exp();
            s += term;
            if term < 1e-18 * s {
                return s;
            }
            n += 1.0;
        }
    }
    // Poisson summation: ϑ₃(0, e^{-π²t}) = (πt)^{-1/2} ϑ₃(0, e^{-1/t}).
    let mut s = 1.0;
    let mut n = 1.0f64;
    loop {
        let term = 2.0 * (-n * n / t).exp();
        s += term;
        if term < 1e-18 * s {
            break;
        }
        n += 1.0;
    }
    s / (std::f64::consts::PI * t).sqrt()
}

/// d/dt ϑ₃(0, e^{-π²t}).
pub fn d_dt_theta3(t: f64) -> f64 {
    assert!(t > 0.0);
    if t >= 0.05 {
        let mut s = 0.0;
        let mut n = 1.0f64;
        loop {
            let term = -2.0 * std::f64::consts::PI.powi(2) * n * n
                * (-std::f64::consts::PI.powi(2) * n * n * t).exp();
            s += term;
            if term.abs() < 1e-18 * s.abs().max(1e-300) {
                return s;
            }
            n += 1.0;
        }
    }
    // Differentiate the modular form: d/dt [ (πt)^{-1/2} Σ e^{-n²/t} ].
    let sqrt_pt = (std::f64::consts::PI * t).sqrt();
    let mut s0 = 1.0;
    let mut s1 = 0.0; // Σ n² e^{-n²/t}
    let mut n = 1.0f64;
    loop {
        let e = (-n * n / t).exp();
        s0 += 2.0 * e;
        s1 += 2.0 * n * n * e;
        if 2.0 * n * n * e < 1e-18 * s0 {
            break;
        }
        n += 1.0;
    }
    -0.5 / (sqrt_pt * t) * s0 + s1 / (sqrt_pt * t * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_t_limit() {
        assert!((jacobi_theta3(50.0) - 1.0).abs() < 1e-16);
    }

    #[test]
    fn q_inverse_e() {
        // t = 1/π²: ϑ₃ = 1 + 2Σ e^{-n²}; DERIVED by direct sum.
        let t = 1.0 / std::f64::consts::PI.powi(2);
        let mut want = 1.0;
        for n in 1..12 {
            want += 2.0 * (-((n * n) as f64)).exp();
        }
        assert!((jacobi_theta3(t) - want).abs() < 1e-14);
    }

    #[test]
    fn modular_duality_across_branch() {
        // ϑ₃(0, e^{-π²t}) = (πt)^{-1/2} ϑ₃(0, e^{-π²(1/(π²t))}) — check by
        // evaluating both sides on opposite branches.
        for t in [0.02f64, 0.04, 0.2] {
            let lhs = jacobi_theta3(t);
            let dual = 1.0 / (std::f64::consts::PI.powi(2) * t);
            let rhs = jacobi_theta3(dual) / (std::f64::consts::PI * t).sqrt();
            assert!((lhs - rhs).abs() < 1e-12 * lhs, "t={t}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for t in [0.03f64, 0.3, 1.0] {
            let h = 1e-6 * t;
            let fd = (jacobi_theta3(t + h) - jacobi_theta3(t - h)) / (2.0 * h);
            let an = d_dt_theta3(t);
            assert!((fd - an).abs() < 1e-6 * an.abs().max(1e-12), "t={t}: {an} vs fd {fd}");
        }
    }
}
