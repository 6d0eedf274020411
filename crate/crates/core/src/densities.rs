//! Density catalog: every Σ(x) / Σ(x,y) used by the continuation and oracle
//! layers, with parameter validation, the perturbation split Σ = Σ̄ + δΣ, and
//! the σ(L) / mass / area functionals.

use crate::error::{Result, SpecError};
use crate::quad;
use crate::specfun::elliptic_e_incomplete;
use serde::{Deserialize, Serialize};

pub const PI: f64 = std::f64::consts::PI;

/// Tagged density description. `kind` + params round-trip through JSON/TOML.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensitySpec {
    /// Σ = 1/υ₁² on (-L, x₀], 1/υ₂² on (x₀, L), with x₀ = r - R/2, R = 2L.
    Piecewise {
        upsilon1: f64,
        upsilon2: f64,
        r: f64,
        big_r: f64,
    },
    /// Σ = 1 + η sin(πx/2L), |η| < 1.
    Sinusoidal { eta: f64, l_half: f64 },
    /// Σ = (α+1)²/(1+α(x+1/2))⁴ on |x| ≤ 1/2, α > -1. Isospectral to the
    /// homogeneous unit string.
    Borg { alpha: f64 },
    /// Σ = 2 + η sin(2π(x+ℓ)/ε), ε = 2L ε̄, |η| < 2.
    Oscillating {
        eta: f64,
        eps_bar: f64,
        ell: f64,
        l_half: f64,
    },
    /// Σ = a₀/2 + Σ_j [a_j cos(2πjx/Δ) + b_j sin(2πjx/Δ)], a₀ fixed by the
    /// total mass M.
    FourierPeriodic {
        a: Vec<f64>,
        b: Vec<f64>,
        delta: f64,
        mass: f64,
        l_half: f64,
    },
    /// Conformal density of f(z) = (z+αz²)/√(1+8α²L²/3) on the square of
    /// side 2L: Σ = 3(4α²y² + (2αx+1)²)/(8α²L² + 3), |α| < 1/2.
    DeformedSquare { alpha: f64, l_half: f64 },
    /// Conformal density of f(z) = e^{z-L} on [-L,L]×[-π,π]: Σ = e^{2(x-L)},
    /// L = -ln(r)/2, 0 < r < 1.
    AnnulusMap { r: f64 },
    /// Midpoint-sampled piecewise-constant approximation of `inner` on a
    /// uniform n-cell grid.
    StaircaseOf {
        inner: Box<DensitySpec>,
        n_cells: usize,
    },
}

/// Perturbation split Σ ≈ Σ̄ + δΣ.
#[derive(Debug, Clone, Copy)]
pub struct PerturbationSplit {
    pub sigma_bar: f64,
    /// sup |δΣ| estimated on a 10⁴-point grid.
    pub delta_sup: f64,
    /// ∫ δΣ over the domain.
    pub delta_integral: f64,
    /// True when |δΣ|/Σ̄ is small enough for first-order validity not to be
    /// in doubt (sup |δΣ| < 0.5 Σ̄).
    pub first_order_sound: bool,
}

impl DensitySpec {
    // -- constructors with validation ------------------------------------

    pub fn piecewise(upsilon1: f64, upsilon2: f64, r: f64, big_r: f64) -> Result<Self> {
        if upsilon1 <= 0.0 || upsilon2 <= 0.0 {
            return Err(SpecError::InvalidParameter(
                "piecewise: upsilon1, upsilon2 must be > 0".into(),
            ));
        }
        if !(r > 0.0 && r < big_r) {
            return Err(SpecError::InvalidParameter(format!(
                "piecewise: need 0 < r < R, got r = {r}, R = {big_r}"
            )));
        }
        Ok(Self::Piecewise {
            upsilon1,
            upsilon2,
            r,
            big_r,
        })
    }

    pub fn sinusoidal(eta: f64, l_half: f64) -> Result<Self> {
        if eta.abs() >= 1.0 {
            return Err(SpecError::InvalidParameter(format!(
                "sinusoidal: |eta| < 1 required to keep Sigma > 0, got {eta}"
            )));
        }
        if l_half <= 0.0 {
            return Err(SpecError::InvalidParameter("sinusoidal: L > 0".into()));
        }
        Ok(Self::Sinusoidal { eta, l_half })
    }

    pub fn borg(alpha: f64) -> Result<Self> {
        if alpha <= -1.0 {
            return Err(SpecError::InvalidParameter(format!(
                "borg: alpha > -1 required, got {alpha}"
            )));
        }
        Ok(Self::Borg { alpha })
    }

    pub fn oscillating(eta: f64, eps_bar: f64, ell: f64, l_half: f64) -> Result<Self> {
        if eta.abs() >= 2.0 {
            return Err(SpecError::InvalidParameter(format!(
                "oscillating: |eta| < 2 required to keep Sigma > 0, got {eta}"
            )));
        }
        if eps_bar <= 0.0 || l_half <= 0.0 {
            return Err(SpecError::InvalidParameter(
                "oscillating: eps_bar > 0, L > 0".into(),
            ));
        }
        Ok(Self::Oscillating {
            eta,
            eps_bar,
            ell,
            l_half,
        })
    }

    pub fn fourier_periodic(
        a: Vec<f64>,
        b: Vec<f64>,
        delta: f64,
        mass: f64,
        l_half: f64,
    ) -> Result<Self> {
        if delta <= 0.0 || l_half <= 0.0 || mass <= 0.0 {
            return Err(SpecError::InvalidParameter(
                "fourier_periodic: delta, mass, L must be > 0".into(),
            ));
        }
        let d = Self::FourierPeriodic {
            a,
            b,
            delta,
            mass,
            l_half,
        };
        // positivity on a grid
        let l = l_half;
        let mut min = f64::INFINITY;
        for k in 0..=2000 {
            let x = -l + 2.0 * l * k as f64 / 2000.0;
            min = min.min(d.eval1(x));
        }
        if min <= 0.0 {
            return Err(SpecError::InvalidParameter(format!(
                "fourier_periodic: Sigma not positive (min ~ {min:.3e})"
            )));
        }
        Ok(d)
    }

    pub fn deformed_square(alpha: f64, l_half: f64) -> Result<Self> {
        if alpha.abs() >= 0.5 {
            return Err(SpecError::InvalidParameter(format!(
                "deformed_square: |alpha| < 1/2 required, got {alpha}"
            )));
        }
        Ok(Self::DeformedSquare { alpha, l_half })
    }

    pub fn annulus_map(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(SpecError::InvalidParameter(format!(
                "annulus_map: 0 < r < 1 required, got {r}"
            )));
        }
        Ok(Self::AnnulusMap { r })
    }

    pub fn staircase_of(inner: DensitySpec, n_cells: usize) -> Result<Self> {
        if n_cells < 1 {
            return Err(SpecError::InvalidParameter("staircase: N >= 1".into()));
        }
        if inner.dim() != 1 {
            return Err(SpecError::Unsupported("staircase of 2D density".into()));
        }
        Ok(Self::StaircaseOf {
            inner: Box::new(inner),
            n_cells,
        })
    }

    // -- geometry ---------------------------------------------------------

    pub fn dim(&self) -> usize {
        match self {
            Self::DeformedSquare { .. } | Self::AnnulusMap { .. } => 2,
            _ => 1,
        }
    }

    /// Half-width in x.
    pub fn l_half(&self) -> f64 {
        match self {
            Self::Piecewise { big_r, .. } => 0.5 * big_r,
            Self::Sinusoidal { l_half, .. }
            | Self::Oscillating { l_half, .. }
            | Self::FourierPeriodic { l_half, .. }
            | Self::DeformedSquare { l_half, .. } => *l_half,
            Self::Borg { .. } => 0.5,
            Self::AnnulusMap { r } => -0.5 * r.ln(),
            Self::StaircaseOf { inner, .. } => inner.l_half(),
        }
    }

    /// Half-width in y (2D only): L for the square, π for the annulus strip.
    pub fn l_half_y(&self) -> f64 {
        match self {
            Self::DeformedSquare { l_half, .. } => *l_half,
            Self::AnnulusMap { .. } => PI,
            _ => 0.0,
        }
    }

    // -- evaluation ---------------------------------------------------------

    /// Σ(x) for 1D densities.
    pub fn eval1(&self, x: f64) -> f64 {
        match self {
            Self::Piecewise {
                upsilon1,
                upsilon2,
                r,
                big_r,
            } => {
                let x0 = r - 0.5 * big_r;
                if x <= x0 {
                    1.0 / (upsilon1 * upsilon1)
                } else {
                    1.0 / (upsilon2 * upsilon2)
                }
            }
            Self::Sinusoidal { eta, l_half } => 1.0 + eta * (PI * x / (2.0 * l_half)).sin(),
            Self::Borg { alpha } => {
                let d = 1.0 + alpha * (x + 0.5);
                (alpha + 1.0).powi(2) / d.powi(4)
            }
            Self::Oscillating {
                eta,
                eps_bar,
                ell,
                l_half,
            } => {
                let eps = 2.0 * l_half * eps_bar;
                2.0 + eta * (2.0 * PI * (x + ell) / eps).sin()
            }
            Self::FourierPeriodic {
                a,
                b,
                delta,
                mass,
                l_half,
            } => {
                let a0 = fourier_a0(a, *delta, *mass, *l_half);
                let mut v = 0.5 * a0;
                for (j, &aj) in a.iter().enumerate() {
                    v += aj * (2.0 * PI * (j + 1) as f64 * x / delta).cos();
                }
                for (j, &bj) in b.iter().enumerate() {
                    v += bj * (2.0 * PI * (j + 1) as f64 * x / delta).sin();
                }
                v
            }
            Self::StaircaseOf { inner, n_cells } => {
                let l = inner.l_half();
                let h = 2.0 * l / *n_cells as f64;
                let k = (((x + l) / h).floor() as isize).clamp(0, *n_cells as isize - 1);
                inner.eval1(-l + (k as f64 + 0.5) * h)
            }
            _ => panic!("eval1 on a 2D density"),
        }
    }

    /// Σ(x, y) for 2D (conformal) densities.
    pub fn eval2(&self, x: f64, y: f64) -> f64 {
        match self {
            Self::DeformedSquare { alpha, l_half } => {
                let l = *l_half;
                3.0 * (4.0 * alpha * alpha * y * y + (2.0 * alpha * x + 1.0).powi(2))
                    / (8.0 * alpha * alpha * l * l + 3.0)
            }
            Self::AnnulusMap { r } => {
                let l = -0.5 * r.ln();
                (2.0 * (x - l)).exp()
            }
            _ => panic!("eval2 on a 1D density"),
        }
    }

    // -- functionals ----------------------------------------------------------

    /// Total mass ∫Σ (1D) or ∫∫Σ (2D, = area of the mapped domain for
    /// conformal densities).
    pub fn mass(&self) -> f64 {
        match self {
            Self::Piecewise {
                upsilon1,
                upsilon2,
                r,
                big_r,
            } => r / (upsilon1 * upsilon1) + (big_r - r) / (upsilon2 * upsilon2),
            Self::Sinusoidal { l_half, .. } => 2.0 * l_half,
            Self::Borg { alpha } => {
                let a = *alpha;
                if a.abs() < 1e-12 {
                    1.0
                } else {
                    (a + 1.0).powi(2) * ((1.0 + a).powi(3) - 1.0) / (3.0 * a * (1.0 + a).powi(3))
                }
            }
            Self::Oscillating {
                eta,
                eps_bar,
                ell,
                l_half,
            } => {
                let eps = 2.0 * l_half * eps_bar;
                4.0 * l_half
                    - eta * eps / (2.0 * PI)
                        * ((2.0 * PI * (l_half + ell) / eps).cos()
                            - (2.0 * PI * (ell - l_half) / eps).cos())
            }
            Self::FourierPeriodic { mass, .. } => *mass,
            Self::DeformedSquare { l_half, .. } => 4.0 * l_half * l_half,
            Self::AnnulusMap { r } => PI * (1.0 - r * r),
            Self::StaircaseOf { .. } => {
                let breaks = self.natural_breaks();
                quad::adaptive_panels(&|x| self.eval1(x), &breaks, 1e-12, 1e-12).value
            }
        }
    }

    /// Subdivision points aligned with the density's own structure (period
    /// boundaries, jumps); quadrature refines inside each panel.
    pub fn natural_breaks(&self) -> Vec<f64> {
        let l = self.l_half();
        match self {
            Self::Piecewise { r, big_r, .. } => {
                let x0 = r - 0.5 * big_r;
                vec![-l, x0, l]
            }
            Self::Oscillating { eps_bar, .. } => {
                let n = (2.0 / eps_bar).ceil() as usize + 1;
                quad::uniform_breaks(-l, l, n.max(2))
            }
            Self::FourierPeriodic { delta, a, b, .. } => {
                let jmax = a.len().max(b.len()).max(1);
                let n = ((2.0 * l / delta * jmax as f64).ceil() as usize * 4).clamp(2, 4096);
                quad::uniform_breaks(-l, l, n)
            }
            Self::StaircaseOf { n_cells, .. } => quad::uniform_breaks(-l, l, *n_cells),
            _ => quad::uniform_breaks(-l, l, 8),
        }
    }

    /// σ(L) = ∫_{-L}^{L} √Σ dx. Closed form where the catalog has one,
    /// adaptive quadrature otherwise.
    pub fn sigma_functional(&self) -> Result<f64> {
        if self.dim() != 1 {
            return Err(SpecError::Unsupported("sigma_functional is 1D".into()));
        }
        match self {
            Self::Piecewise {
                upsilon1,
                upsilon2,
                r,
                big_r,
            } => Ok(r / upsilon1 + (big_r - r) / upsilon2),
            Self::Borg { .. } => Ok(1.0),
            Self::Oscillating {
                eta,
                eps_bar,
                ell,
                l_half,
            } => {
                // (2Lε̄/π)√(η+2) [E(φ₊|m) - E(φ₋|m)], m = 2η/(η+2)
                let (lh, eb) = (*l_half, *eps_bar);
                let m = 2.0 * eta / (eta + 2.0);
                let phi_p = ((eb + 2.0) * lh - 2.0 * ell) * PI / (4.0 * eb * lh);
                let phi_m = (eb * lh - 2.0 * (lh + ell)) * PI / (4.0 * eb * lh);
                Ok(2.0 * lh * eb / PI
                    * (eta + 2.0).sqrt()
                    * (elliptic_e_incomplete(phi_p, m)? - elliptic_e_incomplete(phi_m, m)?))
            }
            _ => Ok(self.sigma_functional_quadrature()),
        }
    }

    /// σ(L) by quadrature regardless of closed forms (oracle path).
    pub fn sigma_functional_quadrature(&self) -> f64 {
        let breaks = self.natural_breaks();
        quad::adaptive_panels(&|x| self.eval1(x).sqrt(), &breaks, 1e-12, 1e-12).value
    }

    /// Σ̄ of the perturbation split: σ(L)²/(2L)² for strings, 𝒜/vol(rect)
    /// for the conformal densities.
    pub fn sigma_bar(&self) -> Result<f64> {
        match self.dim() {
            1 => {
                let l = self.l_half();
                let s = self.sigma_functional()?;
                Ok(s * s / (4.0 * l * l))
            }
            _ => {
                let vol = 4.0 * self.l_half() * self.l_half_y();
                Ok(self.mass() / vol)
            }
        }
    }

    pub fn perturbation_split(&self) -> Result<PerturbationSplit> {
        let sigma_bar = self.sigma_bar()?;
        let mut sup = 0.0f64;
        let n = 10_000;
        let l = self.l_half();
        if self.dim() == 1 {
            for k in 0..=n {
                let x = -l + 2.0 * l * k as f64 / n as f64;
                sup = sup.max((self.eval1(x) - sigma_bar).abs());
            }
        } else {
            let ly = self.l_half_y();
            let m = 100;
            for i in 0..=m {
                for j in 0..=m {
                    let x = -l + 2.0 * l * i as f64 / m as f64;
                    let y = -ly + 2.0 * ly * j as f64 / m as f64;
                    sup = sup.max((self.eval2(x, y) - sigma_bar).abs());
                }
            }
        }
        let vol = if self.dim() == 1 {
            2.0 * l
        } else {
            4.0 * l * self.l_half_y()
        };
        Ok(PerturbationSplit {
            sigma_bar,
            delta_sup: sup,
            delta_integral: self.mass() - sigma_bar * vol,
            first_order_sound: sup < 0.5 * sigma_bar,
        })
    }

    /// δΣ(x) = Σ(x) - Σ̄ (1D).
    pub fn delta_sigma(&self, sigma_bar: f64, x: f64) -> f64 {
        self.eval1(x) - sigma_bar
    }

    /// Stable identifier for table provenance.
    pub fn id(&self) -> String {
        serde_json::to_string(self).unwrap_or_else(|_| "density".into())
    }
}

/// a₀ = M/L − Σ_j a_j Δ sin(2πjL/Δ)/(πjL).
pub fn fourier_a0(a: &[f64], delta: f64, mass: f64, l_half: f64) -> f64 {
    let mut a0 = mass / l_half;
    for (j, &aj) in a.iter().enumerate() {
        let jj = (j + 1) as f64;
        a0 -= aj * delta / (jj * l_half * PI) * (2.0 * l_half * jj * PI / delta).sin();
    }
    a0
}

/// Perimeter of the deformed square: boundary integral of |f'(z)| with
/// f(z) = (z + αz²)/√(1+8α²L²/3). The paper uses 𝓛 without stating it.
pub fn deformed_square_perimeter(alpha: f64, l_half: f64) -> f64 {
    let l = l_half;
    let norm = (1.0 + 8.0 * alpha * alpha * l * l / 3.0).sqrt();
    let speed = |x: f64, y: f64| {
        let re = 1.0 + 2.0 * alpha * x;
        let im = 2.0 * alpha * y;
        (re * re + im * im).sqrt()
    };
    let mut total = 0.0;
    total += quad::adaptive(&|t: f64| speed(t, -l), -l, l, 1e-12, 1e-12, 2000).value;
    total += quad::adaptive(&|t: f64| speed(t, l), -l, l, 1e-12, 1e-12, 2000).value;
    total += quad::adaptive(&|t: f64| speed(l, t), -l, l, 1e-12, 1e-12, 2000).value;
    total += quad::adaptive(&|t: f64| speed(-l, t), -l, l, 1e-12, 1e-12, 2000).value;
    total / norm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piecewise_constant_limit() {
        let d = DensitySpec::piecewise(1.0, 1.0, 0.5, 1.0).unwrap();
        assert_eq!(d.eval1(-0.3), 1.0);
        assert_eq!(d.eval1(0.3), 1.0);
        // σ(L) = α = r/υ₁ + (R-r)/υ₂ = 1
        assert!((d.sigma_functional().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sinusoidal_rejects_large_eta() {
        assert!(DensitySpec::sinusoidal(1.5, 0.5).is_err());
        assert!(DensitySpec::sinusoidal(0.5, 0.5).is_ok());
    }

    #[test]
    fn borg_left_endpoint() {
        // Σ(-1/2) = (1.5)²/1 = 2.25 at α = 0.5
        let d = DensitySpec::borg(0.5).unwrap();
        assert!((d.eval1(-0.5) - 2.25).abs() < 1e-14);
        // σ(L) = 1 independent of α
        assert!((d.sigma_functional().unwrap() - 1.0).abs() < 1e-15);
        assert!((d.sigma_functional_quadrature() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn constant_sigma_functional() {
        // Σ ≡ 2 on |x| ≤ 1/2 via piecewise: σ = 2L√2 = √2
        let u = 1.0 / 2.0f64.sqrt();
        let d = DensitySpec::piecewise(u, u, 0.5, 1.0).unwrap();
        assert!((d.sigma_functional().unwrap() - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn oscillating_sigma_closed_vs_quadrature() {
        let d = DensitySpec::oscillating(0.1, 2.0 / 101.0, 0.3, 0.5).unwrap();
        let cf = d.sigma_functional().unwrap();
        let q = d.sigma_functional_quadrature();
        assert!((cf - q).abs() < 1e-10, "{cf} vs {q}");
        let d0 = DensitySpec::oscillating(0.1, 2.0 / 101.0, 0.0, 0.5).unwrap();
        assert!((d0.sigma_functional().unwrap() - d0.sigma_functional_quadrature()).abs() < 1e-10);
    }

    #[test]
    fn mass_consistency_catalog() {
        let cat: Vec<DensitySpec> = vec![
            DensitySpec::piecewise(0.8, 1.3, 0.4, 1.0).unwrap(),
            DensitySpec::sinusoidal(0.4, 0.7).unwrap(),
            DensitySpec::borg(0.5).unwrap(),
            DensitySpec::oscillating(0.3, 0.05, 0.11, 0.5).unwrap(),
            DensitySpec::fourier_periodic(vec![0.2, -0.1], vec![0.3], 0.37, 1.0, 0.5).unwrap(),
        ];
        for d in cat {
            let q =
                quad::adaptive_panels(&|x| d.eval1(x), &d.natural_breaks(), 1e-12, 1e-12).value;
            assert!((q - d.mass()).abs() < 1e-10, "{:?}: {q} vs {}", d, d.mass());
        }
    }

    #[test]
    fn fourier_mean_reproduces_mass() {
        let d =
            DensitySpec::fourier_periodic(vec![0.2, -0.05], vec![0.1], 0.41, 1.3, 0.5).unwrap();
        assert!((d.mass() - 1.3).abs() < 1e-15);
        let q = quad::adaptive_panels(&|x| d.eval1(x), &d.natural_breaks(), 1e-12, 1e-12).value;
        assert!((q - 1.3).abs() < 1e-10, "{q}");
    }

    #[test]
    fn conformal_densities_integrate_to_area() {
        // deformed square: area preserved = 4L²
        let d = DensitySpec::deformed_square(0.3, 1.0).unwrap();
        let inner = |x: f64| {
            quad::adaptive(&|y: f64| d.eval2(x, y), -1.0, 1.0, 1e-12, 1e-12, 400).value
        };
        let s = quad::adaptive(&inner, -1.0, 1.0, 1e-10, 1e-10, 400).value;
        assert!((s - 4.0).abs() < 1e-8, "{s}");
        assert!((d.mass() - 4.0).abs() < 1e-15);

        // annulus: π(1-r²)
        let a = DensitySpec::annulus_map(0.5).unwrap();
        let l = a.l_half();
        let ix = quad::adaptive(&|x: f64| (2.0 * (x - l)).exp(), -l, l, 1e-13, 1e-13, 2000).value;
        assert!((2.0 * PI * ix - PI * 0.75).abs() < 1e-10);
        assert!((a.mass() - PI * 0.75).abs() < 1e-15);
    }

    #[test]
    fn deformed_square_identity_map() {
        let d = DensitySpec::deformed_square(0.0, 1.0).unwrap();
        assert!((d.eval2(0.3, -0.7) - 1.0).abs() < 1e-15);
        assert!((deformed_square_perimeter(0.0, 1.0) - 8.0).abs() < 1e-10);
    }

    #[test]
    fn staircase_of_constant_is_constant() {
        let inner = DensitySpec::piecewise(0.5, 0.5, 0.5, 1.0).unwrap(); // Σ ≡ 4
        let st = DensitySpec::staircase_of(inner, 7).unwrap();
        for x in [-0.49, -0.2, 0.0, 0.3, 0.49] {
            assert_eq!(st.eval1(x), 4.0);
        }
    }

    #[test]
    fn staircase_sup_error_first_order_in_h() {
        // Lipschitz Σ: sup|Σ̃ - Σ| = O(h)
        let inner = DensitySpec::sinusoidal(0.5, 0.5).unwrap();
        let sup = |n: usize| {
            let st = DensitySpec::staircase_of(inner.clone(), n).unwrap();
            let mut m = 0.0f64;
            for k in 0..5000 {
                let x = -0.5 + (k as f64 + 0.5) / 5000.0;
                m = m.max((st.eval1(x) - inner.eval1(x)).abs());
            }
            m
        };
        let (e40, e80, e160) = (sup(40), sup(80), sup(160));
        assert!(e80 < 0.7 * e40 && e160 < 0.7 * e80, "{e40} {e80} {e160}");
    }

    #[test]
    fn perturbation_split_piecewise() {
        // Σ̄ = α²/R²
        let d = DensitySpec::piecewise(0.8, 1.3, 0.4, 1.0).unwrap();
        let alpha = 0.4 / 0.8 + 0.6 / 1.3;
        let ps = d.perturbation_split().unwrap();
        assert!((ps.sigma_bar - alpha * alpha).abs() < 1e-12);
    }

    #[test]
    fn perturbation_split_constant_density() {
        let d = DensitySpec::piecewise(1.0, 1.0, 0.3, 1.0).unwrap();
        let ps = d.perturbation_split().unwrap();
        assert!(ps.delta_sup < 1e-12 && ps.delta_integral.abs() < 1e-12);
    }

    #[test]
    fn thin_annulus_delta_sigma_profile() {
        // δΣ ≈ -2L + 2x(1-2L) for r → 1⁻
        let r: f64 = 0.995;
        let d = DensitySpec::annulus_map(r).unwrap();
        let l = d.l_half();
        // reference Σ̄ = 1 in the thin-annulus expansion
        for x in [-l, 0.0, l] {
            let got = d.eval2(x, 0.0) - 1.0;
            let approx = -2.0 * l + 2.0 * x * (1.0 - 2.0 * l);
            assert!(
                (got - approx).abs() < 30.0 * l * l,
                "x={x}: {got} vs {approx}"
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let d = DensitySpec::oscillating(0.1, 2.0 / 101.0, 0.3, 0.5).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: DensitySpec = serde_json::from_str(&s).unwrap();
        assert!((back.eval1(0.2) - d.eval1(0.2)).abs() < 1e-15);
    }
}
