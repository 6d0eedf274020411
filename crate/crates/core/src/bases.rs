//! Laplacian eigenbases on intervals and rectangles for every boundary
//! condition in play, plus matrix elements ⟨n|Σ|m⟩ with closed-form and
//! quadrature routes.

use crate::densities::{fourier_a0, DensitySpec, PI};
use crate::error::{Result, SpecError};
use crate::quad;
use crate::specfun::sici;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Boundary-condition tag. DD2 is Dirichlet in both rectangle directions
/// (the cut annulus); DP is Dirichlet in x, periodic in y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bc {
    DD,
    NN,
    DN,
    ND,
    PP,
    DP,
    DD2,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BasisSpec {
    pub dim: u8,
    pub l_half_x: f64,
    /// Half-width in y for dim = 2 (π for the annulus rectangle).
    pub l_half_y: f64,
    pub bc: Bc,
}

impl BasisSpec {
    pub fn interval(bc: Bc, l_half: f64) -> Self {
        Self {
            dim: 1,
            l_half_x: l_half,
            l_half_y: 0.0,
            bc,
        }
    }

    pub fn rectangle(bc: Bc, l_half_x: f64, l_half_y: f64) -> Self {
        Self {
            dim: 2,
            l_half_x,
            l_half_y,
            bc,
        }
    }
}

/// Quantum numbers. 1D uses nx (and u for the NN/PP branches); 2D adds ny.
/// For NN: u = 1 is the cosine branch (nx ≥ 0, nx = 0 the constant mode),
/// u = 2 the sine branch (nx ≥ 1). For PP: u = 1 cosine (nx ≥ 0), u = 2
/// sine (nx ≥ 1). For DP: u distinguishes sin/cos in y, ny ≥ 1 doubly
/// degenerate, ny = 0 only at u = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeIndex {
    pub nx: i64,
    pub ny: i64,
    pub u: u8,
}

impl ModeIndex {
    pub fn one_d(n: i64) -> Self {
        Self { nx: n, ny: 0, u: 1 }
    }

    pub fn branch(n: i64, u: u8) -> Self {
        Self { nx: n, ny: 0, u }
    }

    pub fn two_d(nx: i64, ny: i64, u: u8) -> Self {
        Self { nx, ny, u }
    }
}

fn check_index(basis: &BasisSpec, idx: ModeIndex) -> Result<()> {
    let bad = |msg: &str| Err(SpecError::InvalidIndex(format!("{msg}: {idx:?}")));
    match basis.bc {
        Bc::DD | Bc::DN | Bc::ND => {
            if idx.nx < 1 {
                return bad("nx >= 1 required");
            }
        }
        Bc::NN | Bc::PP => match idx.u {
            1 => {
                if idx.nx < 0 {
                    return bad("cosine branch needs nx >= 0");
                }
            }
            2 => {
                if idx.nx < 1 {
                    return bad("sine branch needs nx >= 1");
                }
            }
            _ => return bad("u must be 1 or 2"),
        },
        Bc::DP => {
            if idx.nx < 1 {
                return bad("nx >= 1 required");
            }
            match idx.u {
                1 => {
                    if idx.ny < 0 {
                        return bad("ny >= 0 required");
                    }
                }
                2 => {
                    if idx.ny < 1 {
                        return bad("sine y-branch needs ny >= 1");
                    }
                }
                _ => return bad("u must be 1 or 2"),
            }
        }
        Bc::DD2 => {
            if idx.nx < 1 || idx.ny < 1 {
                return bad("nx, ny >= 1 required");
            }
        }
    }
    Ok(())
}

/// Eigenvalue of -Δ for the given mode.
pub fn eigenvalue(basis: &BasisSpec, idx: ModeIndex) -> Result<f64> {
    check_index(basis, idx)?;
    let l = basis.l_half_x;
    let n = idx.nx as f64;
    Ok(match basis.bc {
        Bc::DD => n * n * PI * PI / (4.0 * l * l),
        Bc::NN => match idx.u {
            1 => n * n * PI * PI / (l * l),
            _ => (2.0 * n - 1.0).powi(2) * PI * PI / (4.0 * l * l),
        },
        Bc::DN | Bc::ND => (2.0 * n - 1.0).powi(2) * PI * PI / (16.0 * l * l),
        Bc::PP => n * n * PI * PI / (l * l),
        Bc::DP => {
            let ny = idx.ny as f64;
            n * n * PI * PI / (4.0 * l * l) + ny * ny * (PI / basis.l_half_y).powi(2)
        }
        Bc::DD2 => {
            let ny = idx.ny as f64;
            n * n * PI * PI / (4.0 * l * l)
                + ny * ny * PI * PI / (4.0 * basis.l_half_y * basis.l_half_y)
        }
    })
}

/// Normalized eigenfunction value; 2D modes are products of 1D factors.
pub fn eigenfunction(basis: &BasisSpec, idx: ModeIndex, point: (f64, f64)) -> Result<f64> {
    check_index(basis, idx)?;
    let l = basis.l_half_x;
    let (x, y) = point;
    if x.abs() > l * (1.0 + 1e-12) {
        return Err(SpecError::InvalidParameter(format!(
            "point x = {x} outside [-{l}, {l}]"
        )));
    }
    let n = idx.nx as f64;
    Ok(match basis.bc {
        Bc::DD => (1.0 / l).sqrt() * (n * PI * (x + l) / (2.0 * l)).sin(),
        Bc::NN => match (idx.u, idx.nx) {
            (1, 0) => 1.0 / (2.0 * l).sqrt(),
            (1, _) => (1.0 / l).sqrt() * (n * PI * x / l).cos(),
            _ => (1.0 / l).sqrt() * ((2.0 * n - 1.0) * PI * x / (2.0 * l)).sin(),
        },
        Bc::DN => (1.0 / l).sqrt() * ((2.0 * n - 1.0) * PI * (x + l) / (4.0 * l)).sin(),
        Bc::ND => (1.0 / l).sqrt() * ((2.0 * n - 1.0) * PI * (x + l) / (4.0 * l)).cos(),
        Bc::PP => match (idx.u, idx.nx) {
            (1, 0) => 1.0 / (2.0 * l).sqrt(),
            (1, _) => (1.0 / l).sqrt() * (n * PI * x / l).cos(),
            _ => (1.0 / l).sqrt() * (n * PI * x / l).sin(),
        },
        Bc::DP => {
            let ly = basis.l_half_y;
            let fx = (1.0 / l).sqrt() * (n * PI * (x + l) / (2.0 * l)).sin();
            let ky = idx.ny as f64 * PI / ly;
            let fy = match (idx.u, idx.ny) {
                (1, 0) => 1.0 / (2.0 * ly).sqrt(),
                (1, _) => (1.0 / ly).sqrt() * (ky * y).sin(),
                _ => (1.0 / ly).sqrt() * (ky * y).cos(),
            };
            fx * fy
        }
        Bc::DD2 => {
            let ly = basis.l_half_y;
            let fx = (1.0 / l).sqrt() * (n * PI * (x + l) / (2.0 * l)).sin();
            let fy = (1.0 / ly).sqrt() * (idx.ny as f64 * PI * (y + ly) / (2.0 * ly)).sin();
            fx * fy
        }
    })
}

/// Per-entry provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    ClosedForm,
    Quadrature,
}

/// ⟨n|Σ|m⟩ with the catalog closed form when one exists, quadrature
/// otherwise. Both routes are exposed for cross-testing.
pub fn matrix_element(
    density: &DensitySpec,
    basis: &BasisSpec,
    n: ModeIndex,
    m: ModeIndex,
) -> Result<(f64, Provenance)> {
    check_index(basis, n)?;
    check_index(basis, m)?;
    if let Some(v) = matrix_element_closed(density, basis, n, m) {
        return Ok((v, Provenance::ClosedForm));
    }
    Ok((
        matrix_element_quadrature(density, basis, n, m)?,
        Provenance::Quadrature,
    ))
}

/// Adaptive Gauss–Kronrod route, subdividing at the density's own period /
/// jump boundaries first.
pub fn matrix_element_quadrature(
    density: &DensitySpec,
    basis: &BasisSpec,
    n: ModeIndex,
    m: ModeIndex,
) -> Result<f64> {
    if basis.dim == 1 {
        let f = |x: f64| {
            density.eval1(x)
                * eigenfunction(basis, n, (x, 0.0)).unwrap()
                * eigenfunction(basis, m, (x, 0.0)).unwrap()
        };
        let mut breaks = density.natural_breaks();
        // also resolve the oscillation of the integrand itself
        let osc = (n.nx.abs() + m.nx.abs()) as usize + 2;
        if breaks.len() < osc {
            breaks = quad::uniform_breaks(-basis.l_half_x, basis.l_half_x, osc);
        }
        let r = quad::adaptive_panels(&f, &breaks, 1e-13, 1e-12);
        if !r.converged && r.err_est > 1e-9 {
            return Err(SpecError::QuadratureFailure {
                err_est: r.err_est,
                tol: 1e-9,
            });
        }
        Ok(r.value)
    } else {
        let lx = basis.l_half_x;
        let ly = basis.l_half_y;
        let nx_osc = ((n.nx.abs() + m.nx.abs()) as usize + 2).min(400);
        let ny_osc = ((n.ny.abs() + m.ny.abs()) as usize + 2).min(400);
        let inner = |x: f64| {
            let g = |y: f64| {
                density.eval2(x, y)
                    * eigenfunction(basis, n, (x, y)).unwrap()
                    * eigenfunction(basis, m, (x, y)).unwrap()
            };
            quad::adaptive_panels(&g, &quad::uniform_breaks(-ly, ly, ny_osc), 1e-12, 1e-10).value
        };
        let r = quad::adaptive_panels(&inner, &quad::uniform_breaks(-lx, lx, nx_osc), 1e-10, 1e-9);
        Ok(r.value)
    }
}

fn matrix_element_closed(
    density: &DensitySpec,
    basis: &BasisSpec,
    n: ModeIndex,
    m: ModeIndex,
) -> Option<f64> {
    match (density, basis.bc) {
        (DensitySpec::Piecewise { .. }, Bc::DD | Bc::NN | Bc::DN | Bc::ND | Bc::PP) => {
            piecewise_element(density, basis, n, m)
        }
        (DensitySpec::Sinusoidal { eta, .. }, Bc::DD) => {
            let (a, b) = (n.nx, m.nx);
            let mut v = if a == b { 1.0 } else { 0.0 };
            if (a - b).abs() == 1 {
                v += -0.5 * eta;
            }
            Some(v)
        }
        (DensitySpec::Borg { alpha }, Bc::DD) => Some(borg_element(*alpha, n.nx, m.nx)),
        (
            DensitySpec::Oscillating {
                eta,
                eps_bar,
                ell,
                l_half,
            },
            Bc::DD,
        ) => oscillating_element(*eta, *eps_bar, *ell, *l_half, n.nx, m.nx),
        (DensitySpec::FourierPeriodic { .. }, Bc::DD) => fourier_element(density, n.nx, m.nx),
        (DensitySpec::StaircaseOf { inner, n_cells }, Bc::DD) => Some(staircase_element(
            inner,
            *n_cells,
            basis.l_half_x,
            n.nx,
            m.nx,
        )),
        (DensitySpec::DeformedSquare { alpha, l_half }, Bc::DD2) => {
            Some(deformed_square_element(*alpha, *l_half, n, m))
        }
        (DensitySpec::AnnulusMap { r }, Bc::DP | Bc::DD2) => {
            // y-part integrates to δ_{ny,my} δ_{u,u'} for both bases.
            if n.ny != m.ny || n.u != m.u {
                return Some(0.0);
            }
            Some(annulus_x_element(*r, n.nx, m.nx))
        }
        _ => None,
    }
}

/// Piecewise string: ⟨Σ⟩ = ρ₂ + (ρ₁ - ρ₂) I₁ with I₁ = ∫_{-L}^{x₀} ψ².
fn piecewise_element(
    density: &DensitySpec,
    basis: &BasisSpec,
    n: ModeIndex,
    m: ModeIndex,
) -> Option<f64> {
    let DensitySpec::Piecewise {
        upsilon1,
        upsilon2,
        r,
        big_r,
    } = density
    else {
        return None;
    };
    let l = 0.5 * big_r;
    if (basis.l_half_x - l).abs() > 1e-12 * l {
        return None;
    }
    let x0 = r - l;
    let rho1 = 1.0 / (upsilon1 * upsilon1);
    let rho2 = 1.0 / (upsilon2 * upsilon2);
    let u0 = (x0 + l) / (2.0 * l); // in (0, 1)
    match basis.bc {
        Bc::DD => {
            let (a, b) = (n.nx as f64, m.nx as f64);
            if n.nx == m.nx {
                // I₁ = u₀ - sin(2nπu₀)/(2nπ)
                let i1 = u0 - (2.0 * a * PI * u0).sin() / (2.0 * a * PI);
                Some(rho2 + (rho1 - rho2) * i1)
            } else {
                let dm = a - b;
                let sp = a + b;
                let v = (rho1 - rho2) / PI
                    * ((dm * PI * u0).sin() / dm - (sp * PI * u0).sin() / sp);
                Some(v)
            }
        }
        // Diagonal entries only for the other boundary conditions (the
        // first-order Casimir machinery needs nothing else in closed form).
        Bc::NN if n == m => {
            let i1 = match (n.u, n.nx) {
                (1, 0) => u0,
                (1, _) => {
                    let a = n.nx as f64;
                    // (1/L)∫_{-L}^{x₀} cos²(aπx/L) dx
                    0.5 * ((x0 + l) / l + ((2.0 * a * PI * x0 / l).sin() + (2.0 * a * PI).sin())
                        / (2.0 * a * PI))
                }
                _ => {
                    let k = (2.0 * n.nx as f64 - 1.0) * PI / (2.0 * l);
                    0.5 * ((x0 + l) / l - ((2.0 * k * x0).sin() + (2.0 * k * l).sin()) / (2.0 * k * l))
                }
            };
            Some(rho2 + (rho1 - rho2) * i1)
        }
        Bc::DN | Bc::ND if n == m => {
            let k = (2.0 * n.nx as f64 - 1.0) * PI / (4.0 * l);
            let i1 = if basis.bc == Bc::DN {
                // ψ ∝ sin(k(x+L))
                0.5 * ((x0 + l) / l - (2.0 * k * (x0 + l)).sin() / (2.0 * k * l))
            } else {
                // ψ ∝ cos(k(x+L))
                0.5 * ((x0 + l) / l + (2.0 * k * (x0 + l)).sin() / (2.0 * k * l))
            };
            Some(rho2 + (rho1 - rho2) * i1)
        }
        Bc::PP if n == m => {
            let i1 = match (n.u, n.nx) {
                (1, 0) => u0,
                (1, _) => {
                    let a = n.nx as f64;
                    0.5 * ((x0 + l) / l + ((2.0 * a * PI * x0 / l).sin() + (2.0 * a * PI).sin())
                        / (2.0 * a * PI))
                }
                _ => {
                    let a = n.nx as f64;
                    0.5 * ((x0 + l) / l - ((2.0 * a * PI * x0 / l).sin() + (2.0 * a * PI).sin())
                        / (2.0 * a * PI))
                }
            };
            Some(rho2 + (rho1 - rho2) * i1)
        }
        _ => None,
    }
}

/// Borg string, DD basis on |x| ≤ 1/2. Diagonal per the Ci/Si closed form;
/// off-diagonal from ∫ cos(cπu)/(1+αu)⁴ reduced to Si/Ci by parts.
fn borg_element(alpha: f64, n: i64, m: i64) -> f64 {
    if alpha.abs() < 1e-14 {
        return if n == m { 1.0 } else { 0.0 };
    }
    let a = alpha;
    if n == m {
        let nf = n as f64;
        let arg1 = 2.0 * (a + 1.0) * nf * PI / a;
        let arg2 = 2.0 * nf * PI / a;
        let (s1, c1) = sici(arg1.abs()).unwrap();
        let (s2, c2) = sici(arg2.abs()).unwrap();
        // Si is odd, Ci even up to the iπ branch that cancels in the
        // difference Ci(arg1) − Ci(arg2) when both arguments flip sign.
        let (s1, s2) = if arg1 < 0.0 { (-s1, -s2) } else { (s1, s2) };
        let c = c1 - c2;
        let s = s2 - s1;
        2.0 * PI * PI * (a + 1.0) * nf * nf / (3.0 * a.powi(4))
            * (a * a
                + 2.0 * PI * (a + 1.0) * nf
                    * (c * (2.0 * PI * nf / a).sin() + s * (2.0 * PI * nf / a).cos()))
    } else {
        // ⟨n|Σ|m⟩ = (α+1)² [J(n-m) - J(n+m)], J(c) = ∫₀¹ cos(cπu)/(1+αu)⁴ du
        let j = |c: f64| borg_cos_quartic_integral(a, c);
        (a + 1.0).powi(2) * (j((n - m) as f64) - j((n + m) as f64))
    }
}

/// ∫₀¹ cos(cπu)/(1+αu)⁴ du for integer c ≠ 0: substitute v = 1+αu and reduce
/// by parts down to Si/Ci.
fn borg_cos_quartic_integral(alpha: f64, c: f64) -> f64 {
    let lam = c * PI / alpha;
    let (v0, v1) = (1.0, 1.0 + alpha);
    // cos(cπu) = cos(λv - λ) = cos λ cos(λv) + sin λ sin(λv)
    let cl = lam.cos();
    let sl = lam.sin();
    let i_cos = int_cos_over_v4(lam.abs(), v0, v1);
    let i_sin = int_sin_over_v4(lam.abs(), v0, v1) * lam.signum();
    (cl * i_cos + sl * i_sin) / alpha
}

/// ∫_{v0}^{v1} cos(λv)/v⁴ dv, λ > 0, 0 < v0 < v1.
fn int_cos_over_v4(lam: f64, v0: f64, v1: f64) -> f64 {
    // ∫cos/v⁴ = [-cos/(3v³)] - (λ/3)∫sin/v³
    // ∫sin/v³ = [-sin/(2v²)] + (λ/2)∫cos/v²
    // ∫cos/v² = [-cos/v] - λ[Si(λv)]
    let br = |f: &dyn Fn(f64) -> f64| f(v1) - f(v0);
    let si = |v: f64| sici(lam * v).unwrap().0;
    let int_cos_v2 = br(&|v| -(lam * v).cos() / v) - lam * br(&si);
    let int_sin_v3 = br(&|v| -(lam * v).sin() / (2.0 * v * v)) + 0.5 * lam * int_cos_v2;
    br(&|v| -(lam * v).cos() / (3.0 * v * v * v)) - lam / 3.0 * int_sin_v3
}

/// ∫_{v0}^{v1} sin(λv)/v⁴ dv, λ > 0.
fn int_sin_over_v4(lam: f64, v0: f64, v1: f64) -> f64 {
    let br = |f: &dyn Fn(f64) -> f64| f(v1) - f(v0);
    let ci = |v: f64| sici(lam * v).unwrap().1;
    let int_sin_v2 = br(&|v| -(lam * v).sin() / v) + lam * br(&ci);
    let int_cos_v3 = br(&|v| -(lam * v).cos() / (2.0 * v * v)) - 0.5 * lam * int_sin_v2;
    br(&|v| -(lam * v).sin() / (3.0 * v * v * v)) + lam / 3.0 * int_cos_v3
}

/// Oscillating string, DD basis. Resonant parameter combinations fall back
/// to quadrature (None). The off-diagonal sign follows the standard
/// positive-normalization basis (quadrature-verified).
fn oscillating_element(eta: f64, eb: f64, ell: f64, l: f64, n: i64, m: i64) -> Option<f64> {
    let inv = 1.0 / eb;
    if n == m {
        let nf = n as f64;
        if (nf - inv).abs() < 1e-9 {
            // n = 1/ε̄ exactly
            let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
            return Some(2.0 - 0.5 * eta * sgn * (PI * ell * nf / l).sin());
        }
        if (eb * eb * nf * nf - 1.0).abs() < 1e-9 {
            return None; // near-resonant: quadrature
        }
        Some(
            2.0 + eb.powi(3) * eta * nf * nf * (PI / eb).sin() * (PI * ell / (eb * l)).sin()
                / (PI * (eb * eb * nf * nf - 1.0)),
        )
    } else {
        let (nf, mf) = (n as f64, m as f64);
        let dm = eb * eb * (nf - mf) * (nf - mf) - 4.0;
        let dp = eb * eb * (nf + mf) * (nf + mf) - 4.0;
        if dm.abs() < 1e-9 || dp.abs() < 1e-9 {
            return None; // (n ± m) = ±2/ε̄ resonance
        }
        let sgn = if (n + m) % 2 == 0 { 1.0 } else { -1.0 };
        // global sign opposite to the printed table; verified by quadrature
        Some(
            8.0 * eb.powi(3) * eta * mf * nf * sgn
                * ((PI * (l + ell) / (eb * l)).cos()
                    - (PI * (mf + nf)).cos() * (PI * (l - ell) / (eb * l)).cos())
                / (PI * dm * dp),
        )
    }
}

/// Fourier-periodic density, DD basis: elementary cos/sin overlap integrals
/// with exact resonance branches.
fn fourier_element(density: &DensitySpec, n: i64, m: i64) -> Option<f64> {
    let DensitySpec::FourierPeriodic {
        a,
        b,
        delta,
        mass,
        l_half,
    } = density
    else {
        return None;
    };
    let l = *l_half;
    let a0 = fourier_a0(a, *delta, *mass, l);
    let mut v = if n == m { 0.5 * a0 } else { 0.0 };
    for (j, &aj) in a.iter().enumerate() {
        let c = 2.0 * PI * (j + 1) as f64 / delta;
        v += aj * cos_overlap_dd(c, l, n, m);
    }
    for (j, &bj) in b.iter().enumerate() {
        let c = 2.0 * PI * (j + 1) as f64 / delta;
        v += bj * sin_overlap_dd(c, l, n, m);
    }
    Some(v)
}

/// ⟨n|cos(cx)|m⟩ in the DD basis on [-L, L].
pub fn cos_overlap_dd(c: f64, l: f64, n: i64, m: i64) -> f64 {
    0.5 * (cos_cos_shifted(c, l, (n - m).unsigned_abs()) - cos_cos_shifted(c, l, (n + m) as u64))
}

/// ⟨n|sin(cx)|m⟩ in the DD basis on [-L, L].
pub fn sin_overlap_dd(c: f64, l: f64, n: i64, m: i64) -> f64 {
    0.5 * (sin_cos_shifted(c, l, (n - m).unsigned_abs()) - sin_cos_shifted(c, l, (n + m) as u64))
}

/// (1/L)∫_{-L}^{L} cos(cx) cos(kπ(x+L)/2L) dx for integer k ≥ 0, c > 0.
fn cos_cos_shifted(c: f64, l: f64, k: u64) -> f64 {
    if k == 0 {
        return if c.abs() * l < 1e-300 {
            2.0
        } else {
            2.0 * (c * l).sin() / (c * l)
        };
    }
    let kk = k as f64 * PI / (2.0 * l);
    // cos(kπ(x+L)/2L) = cos(kk x)cos φ − sin(kk x)sin φ, φ = kπ/2
    if (c.abs() - kk).abs() < 1e-12 * kk.max(1.0) {
        // resonant: even part is cos φ cos²(kk x)
        return crate::specfun::gamma::cos_pi(0.5 * k as f64);
    }
    let ip = ((c - kk) * l).sin() / (c - kk) + ((c + kk) * l).sin() / (c + kk);
    crate::specfun::gamma::cos_pi(0.5 * k as f64) * ip / l
}

/// (1/L)∫_{-L}^{L} sin(cx) cos(kπ(x+L)/2L) dx.
fn sin_cos_shifted(c: f64, l: f64, k: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let kk = k as f64 * PI / (2.0 * l);
    let sphase = crate::specfun::gamma::sin_pi(0.5 * k as f64);
    if (c.abs() - kk).abs() < 1e-12 * kk.max(1.0) {
        // even part is −sin φ sin²(kk x)·... integrated: −sin φ
        return -sphase * c.signum();
    }
    let ip = ((c - kk) * l).sin() / (c - kk) - ((c + kk) * l).sin() / (c + kk);
    -sphase * ip / l
}

/// Staircase density, DD basis: exact cell-wise integration (Σ̃ constant per
/// cell).
fn staircase_element(inner: &DensitySpec, n_cells: usize, l: f64, n: i64, m: i64) -> f64 {
    let h = 2.0 * l / n_cells as f64;
    let mut total = 0.0;
    for k in 0..n_cells {
        let x_lo = -l + k as f64 * h;
        let x_hi = x_lo + h;
        let c = inner.eval1(x_lo + 0.5 * h);
        total += c * dd_overlap_integral(l, n, m, x_lo, x_hi);
    }
    total
}

/// (1/L) ∫_{x_lo}^{x_hi} sin(nπ(x+L)/2L) sin(mπ(x+L)/2L) dx.
fn dd_overlap_integral(l: f64, n: i64, m: i64, x_lo: f64, x_hi: f64) -> f64 {
    let u0 = (x_lo + l) / (2.0 * l);
    let u1 = (x_hi + l) / (2.0 * l);
    if n == m {
        let a = n as f64;
        (u1 - u0) - ((2.0 * a * PI * u1).sin() - (2.0 * a * PI * u0).sin()) / (2.0 * a * PI)
    } else {
        let dm = (n - m) as f64;
        let sp = (n + m) as f64;
        (((dm * PI * u1).sin() - (dm * PI * u0).sin()) / dm
            - ((sp * PI * u1).sin() - (sp * PI * u0).sin()) / sp)
            / PI
    }
}

/// Deformed square, DD2 basis on the square of side 2L (four-branch table).
fn deformed_square_element(alpha: f64, l_half: f64, n: ModeIndex, m: ModeIndex) -> f64 {
    let area = 4.0 * l_half * l_half;
    let denom = PI * PI * (2.0 * area * alpha * alpha + 3.0);
    let (nx, ny, mx, my) = (n.nx as f64, n.ny as f64, m.nx as f64, m.ny as f64);
    if n.nx == m.nx && n.ny == m.ny {
        1.0 - 6.0 * area * alpha * alpha * (nx * nx + ny * ny) / (denom * nx * nx * ny * ny)
    } else if n.nx == m.nx {
        let par = if (n.ny + m.ny) % 2 == 0 { 2.0 } else { 0.0 };
        48.0 * area * alpha * alpha * ny * my * par
            / (denom * (ny - my).powi(2) * (ny + my).powi(2))
    } else if n.ny == m.ny {
        let par = if (n.nx + m.nx) % 2 == 0 { 1.0 } else { -1.0 };
        48.0 * area.sqrt() * alpha * nx * mx * (area.sqrt() * alpha * (par + 1.0) + par - 1.0)
            / (denom * (nx - mx).powi(2) * (nx + mx).powi(2))
    } else {
        0.0
    }
}

/// Annulus conformal density, x-factor element in the DD x-basis.
pub fn annulus_x_element(r: f64, n: i64, m: i64) -> f64 {
    let lr = r.ln();
    let (nf, mf) = (n as f64, m as f64);
    if n == m {
        PI * PI * nf * nf * (r * r - 1.0) / (2.0 * (PI * PI * nf * nf * lr + lr.powi(3)))
    } else {
        let par = if (n + m) % 2 == 0 { 1.0 } else { -1.0 };
        -8.0 * PI * PI * nf * mf * lr * (par - r * r)
            / ((PI * PI * (nf - mf).powi(2) + 4.0 * lr * lr)
                * (PI * PI * (nf + mf).powi(2) + 4.0 * lr * lr))
    }
}

/// ⟨n|Ŵ|m⟩ = √(ε_n ε_m) ⟨n|1/Σ|m⟩ for the Borg string (closed form), other
/// densities by quadrature of 1/Σ.
pub fn w_matrix_element(
    density: &DensitySpec,
    basis: &BasisSpec,
    n: ModeIndex,
    m: ModeIndex,
) -> Result<f64> {
    if basis.dim != 1 || basis.bc != Bc::DD {
        return Err(SpecError::Unsupported(
            "w_matrix_element: 1D DD basis only".into(),
        ));
    }
    check_index(basis, n)?;
    check_index(basis, m)?;
    if let DensitySpec::Borg { alpha } = density {
        return Ok(borg_w_element(*alpha, n.nx, m.nx));
    }
    let f = |x: f64| {
        (1.0 / density.eval1(x))
            * eigenfunction(basis, n, (x, 0.0)).unwrap()
            * eigenfunction(basis, m, (x, 0.0)).unwrap()
    };
    let osc = (n.nx + m.nx) as usize + 2;
    let q = quad::adaptive_panels(
        &f,
        &quad::uniform_breaks(-basis.l_half_x, basis.l_half_x, osc),
        1e-13,
        1e-12,
    );
    let en = eigenvalue(basis, n)?;
    let em = eigenvalue(basis, m)?;
    Ok((en * em).sqrt() * q.value)
}

/// Borg ⟨n|Ŵ|m⟩. The diagonal is the published closed form; the off-diagonal
/// bracket squares to the published entry.
pub fn borg_w_element(alpha: f64, n: i64, m: i64) -> f64 {
    let a = alpha;
    let (nf, mf) = (n as f64, m as f64);
    if n == m {
        if a.abs() < 1e-14 {
            return PI * PI * nf * nf;
        }
        3.0 * a.powi(4) / (2.0 * PI * PI * (a + 1.0).powi(2) * nf * nf)
            - (a * a + 3.0 * a + 3.0) * a * a / (a + 1.0).powi(2)
            + PI * PI * (a.powi(4) + 5.0 * a.powi(3) + 10.0 * a * a + 10.0 * a + 5.0) * nf * nf
                / (5.0 * (a + 1.0).powi(2))
    } else {
        let par = if (n + m) % 2 == 0 { 1.0 } else { -1.0 };
        let d2 = (mf * mf - nf * nf).powi(2);
        let bracket = 12.0 * a * a * (mf * mf + nf * nf)
            + (a + 1.0) * (PI * PI * (a + 1.0).powi(2) * d2 - 12.0 * a * a * (mf * mf + nf * nf))
                * par
            - PI * PI * d2;
        16.0 * a * mf * mf * nf * nf * bracket
            / (PI * PI * (a + 1.0).powi(2) * (mf - nf).powi(4) * (mf + nf).powi(4))
    }
}

/// Symmetric table of ⟨n|Σ|m⟩ over a 1D basis tower, n, m = 1..N.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixElementTable {
    pub basis: BasisSpec,
    pub density_id: String,
    pub n: usize,
    /// Row-major N×N entries (symmetric).
    pub entries: Vec<f64>,
    pub provenance: Provenance,
}

impl MatrixElementTable {
    /// Build the N×N table (closed forms per entry where available),
    /// parallel over rows.
    pub fn build(density: &DensitySpec, basis: &BasisSpec, n: usize) -> Result<Self> {
        if basis.dim != 1 {
            return Err(SpecError::Unsupported(
                "dense tables are built for 1D bases; 2D paths use element functions".into(),
            ));
        }
        let rows: Vec<Vec<(f64, Provenance)>> = (1..=n as i64)
            .into_par_iter()
            .map(|i| {
                (i..=n as i64)
                    .map(|j| {
                        matrix_element(density, basis, ModeIndex::one_d(i), ModeIndex::one_d(j))
                            .expect("element")
                    })
                    .collect()
            })
            .collect();
        let mut entries = vec![0.0; n * n];
        let mut prov = Provenance::ClosedForm;
        for (i, row) in rows.iter().enumerate() {
            for (dj, &(v, p)) in row.iter().enumerate() {
                let j = i + dj;
                entries[i * n + j] = v;
                entries[j * n + i] = v;
                if p == Provenance::Quadrature {
                    prov = Provenance::Quadrature;
                }
            }
        }
        Ok(Self {
            basis: *basis,
            density_id: density.id(),
            n,
            entries,
            provenance: prov,
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn diag(&self, i: usize) -> f64 {
        self.entry(i, i)
    }

    /// Eigenvalue ε_i of the underlying basis tower.
    pub fn eps(&self, i: usize) -> f64 {
        eigenvalue(&self.basis, ModeIndex::one_d(i as i64)).expect("index")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| SpecError::Io(e.to_string()))
    }
}
