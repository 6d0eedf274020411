//! Closed-form analytic continuations and Casimir energies for every worked
//! geometry: piecewise / sinusoidal / oscillating strings, square and
//! deformed-square membranes, annuli and concentric cylinders.

pub mod annulus;
pub mod cylinder;
pub mod oscillating;
pub mod piecewise;
pub mod sinusoidal;
pub mod square;

pub use annulus::{
    annulus_delta_z1, kirsten_zeta_c, thin_annulus_casimir, thin_annulus_zeta, CasimirMode,
    ThinAnnulusBc,
};
pub use cylinder::{cylinder_casimir, cylinder_lift, CylinderCasimir};
pub use oscillating::{
    divergence_check, fourier_sumrule1, oscillating_phi, oscillating_zeta, staircase_zeta,
    CasimirFiniteness,
};
pub use piecewise::{piecewise_casimir, piecewise_sumrule1, piecewise_zeta, PiecewiseParams};
pub use sinusoidal::{dd_plus_nn_zeta, psi_aux, sinusoidal_laurent, sinusoidal_zeta};
pub use square::{domain_g, square_g, square_zeta};

use crate::pertzeta::ZetaValue;

/// Laurent data Z(s) ≈ c₋₁/(s-s₀) + c₀ + c₁(s-s₀).
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct LaurentExpansion {
    pub center: f64,
    pub coeff_minus1: f64,
    pub coeff_0: f64,
    pub coeff_1: f64,
}

impl LaurentExpansion {
    /// Evaluate the truncated expansion at center + t.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeff_minus1 / t + self.coeff_0 + self.coeff_1 * t
    }
}

/// Residue of an s ↦ ZetaValue map at `center` from symmetric probes with
/// Richardson extrapolation: δ·[Z(c+δ) - Z(c-δ)]/2 = c₋₁ + c₁δ² + O(δ⁴).
pub fn residue_from_probes<F>(f: F, center: f64, delta: f64) -> crate::error::Result<f64>
where
    F: Fn(f64) -> crate::error::Result<ZetaValue>,
{
    let probe = |d: f64| -> crate::error::Result<f64> {
        let p = f(center + d)?.assert_physical()?;
        let m = f(center - d)?.assert_physical()?;
        Ok(0.5 * d * (p - m))
    };
    let r1 = probe(delta)?;
    let r2 = probe(0.5 * delta)?;
    Ok((4.0 * r2 - r1) / 3.0)
}
