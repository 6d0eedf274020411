//! Special-function layer: every analytic continuation in the crate is built
//! from the functions in this module.
//!
//! Conventions: all series are truncated when a term drops below 1e-16 of the
//! running partial sum (hard cap 10^7 terms); poles are flagged, not thrown,
//! when an evaluation lands within 1e-9 of one.

pub mod bessel;
pub mod elliptic;
pub mod gamma;
pub mod incbeta;
pub mod polylog;
pub mod sici;
pub mod theta;
pub mod zeta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use bessel::{bessel, bessel_k, BesselKind};
pub use elliptic::{elliptic_e_complete, elliptic_e_incomplete};
pub use gamma::{beta_fn, digamma, gamma_fn, harmonic, ln_gamma, EULER_GAMMA};
pub use incbeta::incomplete_beta_complex;
pub use polylog::{lerch_phi, polylog_unit_circle};
pub use sici::sici;
pub use theta::{d_dt_theta3, jacobi_theta3};
pub use zeta::{
    dirichlet_beta, hurwitz_zeta, hurwitz_zeta_value, riemann_zeta, stieltjes_gamma1, POLE_TOL,
};

/// Hard cap on series length, shared by the slow-converging expansions.
pub const MAX_SERIES_TERMS: usize = 10_000_000;

/// Relative series stopping threshold.
pub const SERIES_EPS: f64 = 1e-16;

/// A special-function value with a truncation-error bound and pole flag.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpecialFnResult {
    pub value: Complex64,
    /// Bound on the truncation error of the underlying series.
    pub abs_error_estimate: f64,
    /// When set, `value` must not be consumed downstream.
    pub is_pole: bool,
}

impl SpecialFnResult {
    pub fn new(value: Complex64, abs_error_estimate: f64) -> Self {
        Self {
            value,
            abs_error_estimate,
            is_pole: false,
        }
    }

    pub fn real(v: f64, err: f64) -> Self {
        Self::new(Complex64::new(v, 0.0), err)
    }

    pub fn pole() -> Self {
        Self {
            value: Complex64::new(f64::NAN, f64::NAN),
            abs_error_estimate: f64::INFINITY,
            is_pole: true,
        }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }
}
