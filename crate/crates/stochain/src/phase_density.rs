//! Forward equation for the phase of the limit field.
//!
//! The phase `Phi(l) = \int_0^l eta_tilde(theta, t) dw(theta)` is a
//! continuous martingale, so its density obeys the 1-D diffusion equation
//!
//! ```text
//! d rho / d l = (eta_tilde^2(l, t) / 2) d^2 rho / d Phi^2
//! ```
//!
//! solved here by Crank-Nicolson on a uniform grid in `Phi`, marching in
//! `l`. The spatial operator is in conservation (flux) form with zero-flux
//! boundaries, so the discrete mass is conserved to roundoff; a boundary
//! mass check guards against grids that are too narrow. Starting from a
//! near-delta Gaussian of variance `sigma0^2`, the solution at `l` is the
//! Gaussian of variance `sigma0^2 + \int_0^l eta_tilde^2`, which is what the
//! diagnostics compare against.

use crate::config::ValidatedConfig;
use crate::error::{Error, Result};

/// Uniform grid on `[min, max]` with `points` nodes.
#[derive(Debug, Clone, Copy)]
pub struct PhaseGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl PhaseGrid {
    pub fn symmetric(half_width: f64, points: usize) -> Self {
        PhaseGrid {
            min: -half_width,
            max: half_width,
            points,
        }
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }
}

/// Solved phase density at `l = l_max` with mass/variance diagnostics.
#[derive(Debug, Clone)]
pub struct PhaseDensity {
    pub phi: Vec<f64>,
    pub rho: Vec<f64>,
    pub l: f64,
    /// Variance of the initial near-delta profile.
    pub initial_variance: f64,
    /// `|mass(l) - mass(0)|` in the discrete (cell sum) norm.
    pub mass_drift: f64,
    /// Second central moment of the final density.
    pub variance: f64,
}

impl PhaseDensity {
    /// Theoretical variance of the evolved profile:
    /// `initial_variance + \int_0^l eta_tilde^2(theta, t) dtheta`.
    pub fn expected_variance(&self, cfg: &ValidatedConfig, t: f64) -> Result<f64> {
        Ok(self.initial_variance + cfg.phase_variance(self.l, t)?)
    }

    /// Largest absolute deviation from the Gaussian with variance `var`.
    pub fn linf_vs_gaussian(&self, var: f64) -> f64 {
        self.phi
            .iter()
            .zip(&self.rho)
            .map(|(&phi, &rho)| (rho - gaussian_pdf(phi, var)).abs())
            .fold(0.0, f64::max)
    }
}

pub fn gaussian_pdf(x: f64, var: f64) -> f64 {
    (-0.5 * x * x / var).exp() / (2.0 * std::f64::consts::PI * var).sqrt()
}

const BOUNDARY_MASS_LIMIT: f64 = 1e-8;

/// Solve up to `l_max` in `l_steps` Crank-Nicolson steps, starting from a
/// discrete Gaussian with standard deviation `init_sigma` (defaults to five
/// grid cells when `None`, narrow enough to be near-delta but still
/// resolved).
pub fn solve_phase_density(
    cfg: &ValidatedConfig,
    t: f64,
    grid: &PhaseGrid,
    l_max: f64,
    l_steps: usize,
    init_sigma: Option<f64>,
) -> Result<PhaseDensity> {
    cfg.check_l(l_max)?;
    cfg.check_t(t)?;
    if grid.points < 8 {
        return Err(Error::Domain("phase grid needs at least 8 points".into()));
    }
    if l_steps == 0 {
        return Err(Error::Domain("need at least one step in l".into()));
    }
    let n = grid.points;
    let dphi = grid.step();
    let phi: Vec<f64> = (0..n).map(|i| grid.min + i as f64 * dphi).collect();

    let sigma0 = init_sigma.unwrap_or(5.0 * dphi);
    if !(sigma0 > 0.0) {
        return Err(Error::Domain("initial profile width must be positive".into()));
    }
    // discrete Gaussian, normalized in the cell-sum norm the scheme conserves
    let mut rho: Vec<f64> = phi.iter().map(|&x| gaussian_pdf(x, sigma0 * sigma0)).collect();
    let mass0: f64 = rho.iter().sum::<f64>() * dphi;
    for r in rho.iter_mut() {
        *r /= mass0;
    }
    check_boundary_mass(&rho, dphi, "initial")?;
    let initial_variance = moments(&phi, &rho, dphi).1;

    let dl = l_max / l_steps as f64;
    let mut lower = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut scratch = vec![0.0; n];

    for step in 0..l_steps {
        // midpoint coefficient is second-order accurate for l-dependent
        // intensities
        let l_mid = (step as f64 + 0.5) * dl;
        let d = 0.5 * cfg.eta_tilde_sq(l_mid.min(cfg.length()), t)?;
        let mu = 0.5 * d * dl / (dphi * dphi); // theta = 1/2 split

        // (I - mu A) rho_new = (I + mu A) rho_old, A = zero-flux Laplacian
        for i in 0..n {
            let (al, ac, ar) = laplacian_row(i, n);
            lower[i] = -mu * al;
            diag[i] = 1.0 - mu * ac;
            upper[i] = -mu * ar;
            let left = if i > 0 { rho[i - 1] } else { 0.0 };
            let right = if i + 1 < n { rho[i + 1] } else { 0.0 };
            rhs[i] = rho[i] + mu * (al * left + ac * rho[i] + ar * right);
        }
        thomas_solve(&lower, &diag, &upper, &rhs, &mut rho, &mut scratch);
    }

    check_boundary_mass(&rho, dphi, "final")?;
    let mass1: f64 = rho.iter().sum::<f64>() * dphi;
    let (_, variance) = moments(&phi, &rho, dphi);

    Ok(PhaseDensity {
        phi,
        rho,
        l: l_max,
        initial_variance,
        mass_drift: (mass1 - 1.0).abs(),
        variance,
    })
}

/// Row `i` of the zero-flux Laplacian: interior `(1, -2, 1)`, boundaries
/// `(0, -1, 1)` / `(1, -1, 0)`. Columns sum to zero, which is what makes the
/// cell-sum mass exactly conserved by both the explicit and implicit halves.
fn laplacian_row(i: usize, n: usize) -> (f64, f64, f64) {
    if i == 0 {
        (0.0, -1.0, 1.0)
    } else if i + 1 == n {
        (1.0, -1.0, 0.0)
    } else {
        (1.0, -2.0, 1.0)
    }
}

fn moments(phi: &[f64], rho: &[f64], dphi: f64) -> (f64, f64) {
    let mass: f64 = rho.iter().sum::<f64>() * dphi;
    let mean: f64 = phi.iter().zip(rho).map(|(&x, &r)| x * r).sum::<f64>() * dphi / mass;
    let var: f64 = phi
        .iter()
        .zip(rho)
        .map(|(&x, &r)| (x - mean).powi(2) * r)
        .sum::<f64>()
        * dphi
        / mass;
    (mean, var)
}

fn check_boundary_mass(rho: &[f64], dphi: f64, when: &str) -> Result<()> {
    let edge = (rho[0] + rho[rho.len() - 1]) * dphi;
    if edge > BOUNDARY_MASS_LIMIT {
        return Err(Error::Domain(format!(
            "{when} boundary mass {edge:.3e} exceeds {BOUNDARY_MASS_LIMIT:.0e}; widen the phase grid"
        )));
    }
    Ok(())
}

/// Tridiagonal solve (Thomas algorithm); `lower[0]` and `upper[n-1]` unused.
fn thomas_solve(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
    out: &mut [f64],
    scratch: &mut [f64],
) {
    let n = diag.len();
    scratch[0] = upper[0] / diag[0];
    out[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - lower[i] * scratch[i - 1];
        scratch[i] = upper[i] / denom;
        out[i] = (rhs[i] - lower[i] * out[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        out[i] -= scratch[i] * out[i + 1];
    }
}
