//! Piecewise-constant string: first-order zetas for all five boundary
//! conditions, Casimir energies, and exact s = 1 sum rules.

use crate::densities::{DensitySpec, PI};
use crate::error::{Result, SpecError};
use crate::pertzeta::ZetaValue;
use crate::specfun::polylog::{lerch_phi, polylog_unit_circle};
use crate::specfun::zeta::{riemann_zeta_value, POLE_TOL};
use crate::bases::Bc;
use num_complex::Complex64;

/// Lambiase-convention parameters: υ₁, υ₂ the inverse square-root densities,
/// jump at x₀ = r - R/2 on the string [-R/2, R/2].
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct PiecewiseParams {
    pub upsilon1: f64,
    pub upsilon2: f64,
    pub r: f64,
    pub big_r: f64,
}

impl PiecewiseParams {
    pub fn new(upsilon1: f64, upsilon2: f64, r: f64, big_r: f64) -> Result<Self> {
        // density-level validation
        DensitySpec::piecewise(upsilon1, upsilon2, r, big_r)?;
        Ok(Self {
            upsilon1,
            upsilon2,
            r,
            big_r,
        })
    }

    /// Construct from (α, β, δυ): r/υ₁ = (α+β)/2, (R-r)/υ₂ = (α-β)/2 with the
    /// overall length scale fixed by R.
    pub fn from_alpha_beta(alpha: f64, beta: f64, delta_upsilon: f64, big_r: f64) -> Result<Self> {
        if delta_upsilon.abs() >= 1.0 {
            return Err(SpecError::InvalidParameter("|δυ| < 1 required".into()));
        }
        if alpha <= beta.abs() {
            return Err(SpecError::InvalidParameter("α > |β| required".into()));
        }
        // υ₁/υ₂ = (1+δυ)/(1-δυ); choose υ₂ from the two segment equations.
        let u1_over_u2 = (1.0 + delta_upsilon) / (1.0 - delta_upsilon);
        // r = υ₁ (α+β)/2 and R - r = υ₂ (α-β)/2 ⟹
        // R = υ₂ [ u (α+β)/2 + (α-β)/2 ], u = υ₁/υ₂
        let u2 = big_r / (u1_over_u2 * 0.5 * (alpha + beta) + 0.5 * (alpha - beta));
        let u1 = u1_over_u2 * u2;
        let r = u1 * 0.5 * (alpha + beta);
        Self::new(u1, u2, r, big_r)
    }

    pub fn alpha(&self) -> f64 {
        self.r / self.upsilon1 + (self.big_r - self.r) / self.upsilon2
    }

    pub fn beta(&self) -> f64 {
        self.r / self.upsilon1 - (self.big_r - self.r) / self.upsilon2
    }

    pub fn delta_upsilon(&self) -> f64 {
        (self.upsilon1 - self.upsilon2) / (self.upsilon1 + self.upsilon2)
    }

    pub fn density(&self) -> DensitySpec {
        DensitySpec::piecewise(self.upsilon1, self.upsilon2, self.r, self.big_r)
            .expect("validated")
    }
}

/// First-order (in δυ) spectral zeta of the piecewise string, valid for all
/// real s by analytic continuation. Pole at s = 1/2 from ζ(2s).
pub fn piecewise_zeta(bc: Bc, s: f64, p: &PiecewiseParams) -> Result<ZetaValue> {
    let alpha = p.alpha();
    let beta = p.beta();
    let dv = p.delta_upsilon();
    if (s - 0.5).abs() < POLE_TOL {
        // residue of the δυ = 0 part; the polylog corrections are regular
        let residue = match bc {
            Bc::DD => alpha / (2.0 * PI * PI),
            Bc::NN => alpha / (2.0 * PI),
            Bc::DN | Bc::ND => (2.0 - 1.0) * alpha / (2.0 * PI),
            Bc::PP => alpha / PI,
            _ => return Err(SpecError::Unsupported("piecewise_zeta: 1D bc only".into())),
        };
        return Ok(ZetaValue::pole(s, residue, f64::NAN));
    }
    let nu = 2.0 * s + 1.0;
    let z = riemann_zeta_value(2.0 * s);
    let value: Complex64 = match bc {
        Bc::DD => {
            let theta = (alpha + beta) * PI / alpha;
            let lp = polylog_unit_circle(nu, theta)?;
            let lm = polylog_unit_circle(nu, -theta)?;
            PI.powf(-2.0 * s - 1.0)
                * alpha.powf(2.0 * s)
                * (Complex64::new(PI * z, 0.0) + Complex64::i() * s * dv * (lm - lp))
        }
        Bc::NN => {
            let th = 2.0 * beta * PI / alpha;
            let phi_m = lerch_phi(Complex64::from_polar(1.0, -th), nu, 0.5)?;
            let phi_p = lerch_phi(Complex64::from_polar(1.0, th), nu, 0.5)?;
            let li_m = polylog_unit_circle(nu, -th)?;
            let li_p = polylog_unit_circle(nu, th)?;
            let e = |x: f64| Complex64::from_polar(1.0, x);
            let base = PI.powf(-2.0 * s) * alpha.powf(2.0 * s) * z;
            let corr = Complex64::i()
                * dv
                * (2.0 * PI).powf(-2.0 * s - 1.0)
                * s
                * e(-PI * beta / alpha)
                * alpha.powf(2.0 * s)
                * (phi_m - e(2.0 * PI * beta / alpha) * phi_p - e(PI * beta / alpha) * li_m
                    + e(PI * beta / alpha) * li_p);
            Complex64::new(base, 0.0) + corr
        }
        Bc::DN | Bc::ND => {
            let dv_eff = if bc == Bc::DN { dv } else { -dv };
            let th = beta * PI / alpha;
            // -e^{±iθ} = e^{i(±θ+π)}
            let phi_m = lerch_phi(Complex64::from_polar(1.0, PI - th), nu, 0.5)?;
            let phi_p = lerch_phi(Complex64::from_polar(1.0, PI + th), nu, 0.5)?;
            let e = |x: f64| Complex64::from_polar(1.0, x);
            let base = (4.0f64.powf(s) - 1.0) * PI.powf(-2.0 * s) * alpha.powf(2.0 * s) * z;
            let corr = dv_eff
                * PI.powf(-2.0 * s - 1.0)
                * s
                * alpha.powf(2.0 * s)
                * (e(-PI * beta / (2.0 * alpha)) * phi_m + e(PI * beta / (2.0 * alpha)) * phi_p);
            Complex64::new(base, 0.0) + corr
        }
        Bc::PP => {
            // no first-order δυ correction
            Complex64::new(
                2.0f64.powf(1.0 - 2.0 * s) * PI.powf(-2.0 * s) * alpha.powf(2.0 * s) * z,
                0.0,
            )
        }
        _ => return Err(SpecError::Unsupported("piecewise_zeta: 1D bc only".into())),
    };
    Ok(ZetaValue::regular(s, value, 1e-12 * value.norm()))
}

/// Casimir energies E_C = ½ Z(-1/2), first order in δυ (closed forms).
pub fn piecewise_casimir(bc: Bc, p: &PiecewiseParams) -> Result<f64> {
    let alpha = p.alpha();
    let beta = p.beta();
    let dv = p.delta_upsilon();
    let half_angle = PI * beta / (2.0 * alpha);
    if (half_angle.cos()).abs() < 1e-12 {
        return Err(SpecError::Pole {
            what: "tan/sec at πβ/2α",
            location: half_angle,
        });
    }
    Ok(match bc {
        Bc::DD => -PI / (24.0 * alpha) + dv * half_angle.tan() / (4.0 * alpha),
        Bc::NN => -PI / (24.0 * alpha) - dv * half_angle.tan() / (4.0 * alpha),
        Bc::DN => PI / (48.0 * alpha) - dv / half_angle.cos() / (4.0 * alpha),
        Bc::ND => PI / (48.0 * alpha) + dv / half_angle.cos() / (4.0 * alpha),
        Bc::PP => -PI / (6.0 * alpha),
        _ => return Err(SpecError::Unsupported("piecewise_casimir: 1D bc".into())),
    })
}

/// Exact Z(1) sum rules, all orders in δυ.
pub fn piecewise_sumrule1(bc: Bc, p: &PiecewiseParams) -> Result<f64> {
    let alpha = p.alpha();
    let beta = p.beta();
    let dv = p.delta_upsilon();
    let d2 = dv * dv;
    match bc {
        Bc::DD | Bc::NN => {
            let theta = (alpha + beta) * (dv + 1.0) * PI / (alpha + beta * dv);
            let li_p = polylog_unit_circle(3.0, theta)?;
            let li_m = polylog_unit_circle(3.0, -theta)?;
            let main = (alpha * alpha - beta * beta * d2) / (6.0 * (1.0 - d2));
            let corr = Complex64::i() * dv * (alpha + beta * dv).powi(2)
                / (PI.powi(3) * (d2 - 1.0).powi(2))
                * (li_m - li_p);
            let sign = if bc == Bc::DD { 1.0 } else { -1.0 };
            let v = Complex64::new(main, 0.0) + sign * corr;
            ZetaValue::regular(1.0, v, 1e-13 * v.norm()).assert_physical()
        }
        Bc::DN | Bc::ND => {
            let dv_eff = if bc == Bc::DN { dv } else { -dv };
            let d2e = dv_eff * dv_eff;
            let theta = (alpha + beta) * (dv_eff + 1.0) * PI / (alpha + beta * dv_eff);
            let phi_m = lerch_phi(Complex64::from_polar(1.0, -theta), 3.0, 0.5)?;
            let phi_p = lerch_phi(Complex64::from_polar(1.0, theta), 3.0, 0.5)?;
            let e = |x: f64| Complex64::from_polar(1.0, x);
            let main = (alpha - beta * dv_eff) * (alpha + beta * dv_eff) / (2.0 - 2.0 * d2e);
            let corr = Complex64::i() * dv_eff * (alpha + beta * dv_eff).powi(2)
                / (PI.powi(3) * (d2e - 1.0).powi(2))
                * (e(-0.5 * theta) * phi_m - e(0.5 * theta) * phi_p);
            let v = Complex64::new(main, 0.0) + corr;
            ZetaValue::regular(1.0, v, 1e-13 * v.norm()).assert_physical()
        }
        Bc::PP => Ok((alpha * alpha - beta * beta * d2) / (12.0 - 12.0 * d2)),
        _ => Err(SpecError::Unsupported("piecewise_sumrule1: 1D bc".into())),
    }
}
