//! Kernel density estimation of the chain-end distribution on a 2-D grid,
//! plus the raw histogram.
//!
//! The kernel is a product Gaussian with per-axis bandwidths. Default
//! bandwidths follow Silverman's rule for two dimensions,
//! `h_i = sigma_i * M^{-1/6}`; a degenerate sample (zero spread) falls back
//! to one grid cell so that point masses still render. Kernels are truncated
//! at 6 bandwidths, which changes the mass by less than 1e-8 per sample.

use crate::error::{Error, Result};

/// Rectangular evaluation grid, node-centered.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// Square grid on `[-half, half]^2`.
    pub fn square(half: f64, n: usize) -> Self {
        GridSpec {
            x_min: -half,
            x_max: half,
            y_min: -half,
            y_max: half,
            nx: n,
            ny: n,
        }
    }
}

/// Gaussian KDE values on the grid; `rho[iy * nx + ix]`.
#[derive(Debug, Clone)]
pub struct DensityEstimate {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub rho: Vec<f64>,
    pub bandwidth: (f64, f64),
    /// Discrete integral of the KDE (trapezoid weights); close to 1 on a
    /// sufficiently wide grid.
    pub mass: f64,
    /// Histogram counts on the same grid cells (clamped into edge cells);
    /// sums exactly to the sample count.
    pub counts: Vec<u64>,
    pub m: usize,
}

impl DensityEstimate {
    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.rho[iy * self.xs.len() + ix]
    }

    /// Grid node with the largest density value.
    pub fn mode(&self) -> (f64, f64) {
        let (mut best, mut arg) = (f64::NEG_INFINITY, (0usize, 0usize));
        for iy in 0..self.ys.len() {
            for ix in 0..self.xs.len() {
                let v = self.value(ix, iy);
                if v > best {
                    best = v;
                    arg = (ix, iy);
                }
            }
        }
        (self.xs[arg.0], self.ys[arg.1])
    }

    /// `E[x^2 + y^2]` of the KDE (trapezoid weights, normalized by mass).
    pub fn second_moment(&self) -> f64 {
        let mut acc = 0.0;
        let mut mass = 0.0;
        for iy in 0..self.ys.len() {
            for ix in 0..self.xs.len() {
                let w = trapezoid_weight(ix, self.xs.len()) * trapezoid_weight(iy, self.ys.len());
                let v = self.value(ix, iy) * w;
                acc += v * (self.xs[ix].powi(2) + self.ys[iy].powi(2));
                mass += v;
            }
        }
        let dx = self.xs[1] - self.xs[0];
        let dy = self.ys[1] - self.ys[0];
        let _ = (dx, dy); // cell area cancels in the ratio
        acc / mass
    }
}

fn trapezoid_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i + 1 == n {
        0.5
    } else {
        1.0
    }
}

/// Per-axis Silverman bandwidth for a 2-D Gaussian kernel,
/// `h = sigma_hat * M^{-1/6}`.
pub fn silverman_bandwidth(values: &[f64]) -> f64 {
    let m = values.len();
    if m < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / m as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
    var.sqrt() * (m as f64).powf(-1.0 / 6.0)
}

/// Gaussian-kernel KDE (plus histogram) of endpoint samples on `grid`.
///
/// `bandwidth = None` selects Silverman's rule per axis, with a one-cell
/// floor for degenerate samples; an explicit nonpositive bandwidth is an
/// error.
pub fn estimate_density(
    samples: &[(f64, f64)],
    bandwidth: Option<(f64, f64)>,
    grid: &GridSpec,
) -> Result<DensityEstimate> {
    if samples.is_empty() {
        return Err(Error::Estimator("empty sample set".into()));
    }
    if grid.nx < 2 || grid.ny < 2 || grid.x_max <= grid.x_min || grid.y_max <= grid.y_min {
        return Err(Error::Estimator("degenerate density grid".into()));
    }
    let dx = (grid.x_max - grid.x_min) / (grid.nx - 1) as f64;
    let dy = (grid.y_max - grid.y_min) / (grid.ny - 1) as f64;

    let (hx, hy) = match bandwidth {
        Some((hx, hy)) => {
            if !(hx > 0.0 && hy > 0.0) {
                return Err(Error::Estimator(format!(
                    "degenerate bandwidth ({hx}, {hy})"
                )));
            }
            (hx, hy)
        }
        None => {
            let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
            let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
            (
                silverman_bandwidth(&xs).max(dx),
                silverman_bandwidth(&ys).max(dy),
            )
        }
    };

    let xs: Vec<f64> = (0..grid.nx).map(|i| grid.x_min + i as f64 * dx).collect();
    let ys: Vec<f64> = (0..grid.ny).map(|i| grid.y_min + i as f64 * dy).collect();
    let mut rho = vec![0.0; grid.nx * grid.ny];
    let mut counts = vec![0u64; grid.nx * grid.ny];

    let norm = 1.0 / (2.0 * std::f64::consts::PI * hx * hy * samples.len() as f64);
    let reach_x = (6.0 * hx / dx).ceil() as i64;
    let reach_y = (6.0 * hy / dy).ceil() as i64;

    for &(x, y) in samples {
        let cx = ((x - grid.x_min) / dx).round() as i64;
        let cy = ((y - grid.y_min) / dy).round() as i64;
        // histogram: clamp into the edge cells so counts always sum to M
        let bx = cx.clamp(0, grid.nx as i64 - 1) as usize;
        let by = cy.clamp(0, grid.ny as i64 - 1) as usize;
        counts[by * grid.nx + bx] += 1;

        let ix_lo = (cx - reach_x).max(0) as usize;
        let ix_hi = (cx + reach_x).min(grid.nx as i64 - 1) as usize;
        let iy_lo = (cy - reach_y).max(0) as usize;
        let iy_hi = (cy + reach_y).min(grid.ny as i64 - 1) as usize;
        for iy in iy_lo..=iy_hi {
            let uy = (ys[iy] - y) / hy;
            let gy = (-0.5 * uy * uy).exp();
            let row = iy * grid.nx;
            for (ix, &gx_pos) in xs.iter().enumerate().take(ix_hi + 1).skip(ix_lo) {
                let ux = (gx_pos - x) / hx;
                rho[row + ix] += norm * gy * (-0.5 * ux * ux).exp();
            }
        }
    }

    let mut mass = 0.0;
    for iy in 0..grid.ny {
        for ix in 0..grid.nx {
            mass += rho[iy * grid.nx + ix]
                * trapezoid_weight(ix, grid.nx)
                * trapezoid_weight(iy, grid.ny);
        }
    }
    mass *= dx * dy;

    Ok(DensityEstimate {
        xs,
        ys,
        rho,
        bandwidth: (hx, hy),
        mass,
        counts,
        m: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_cloud(m: usize) -> Vec<(f64, f64)> {
        // deterministic pseudo-cloud; spread ~0.2 around (0.5, 0)
        (0..m)
            .map(|i| {
                let a = i as f64 * 0.7548776662466927 % 1.0;
                let b = i as f64 * 0.5698402909980532 % 1.0;
                (
                    0.5 + 0.2 * (2.0 * std::f64::consts::PI * a).cos() * b.sqrt(),
                    0.2 * (2.0 * std::f64::consts::PI * a).sin() * b.sqrt(),
                )
            })
            .collect()
    }

    #[test]
    fn mass_is_close_to_one() {
        let samples = gaussian_cloud(2000);
        let est = estimate_density(&samples, None, &GridSpec::square(1.5, 129)).unwrap();
        assert!((est.mass - 1.0).abs() < 1e-3, "mass = {}", est.mass);
    }

    #[test]
    fn histogram_counts_sum_to_m() {
        let samples = gaussian_cloud(1234);
        let est = estimate_density(&samples, None, &GridSpec::square(1.5, 65)).unwrap();
        assert_eq!(est.counts.iter().sum::<u64>(), 1234);
    }

    #[test]
    fn degenerate_sample_concentrates_at_point() {
        // all mass at (0.8, 0): mode within one grid cell
        let samples = vec![(0.8, 0.0); 500];
        let grid = GridSpec::square(1.2, 121);
        let est = estimate_density(&samples, None, &grid).unwrap();
        let cell = (grid.x_max - grid.x_min) / (grid.nx - 1) as f64;
        let (mx, my) = est.mode();
        assert!((mx - 0.8).abs() <= cell + 1e-12, "mode x = {mx}");
        assert!(my.abs() <= cell + 1e-12, "mode y = {my}");
    }

    #[test]
    fn explicit_bad_bandwidth_is_an_error() {
        let samples = gaussian_cloud(100);
        let grid = GridSpec::square(1.0, 33);
        assert!(estimate_density(&samples, Some((0.0, 0.1)), &grid).is_err());
        assert!(estimate_density(&samples, Some((-1.0, 0.1)), &grid).is_err());
    }

    #[test]
    fn second_moment_tracks_sample_moment() {
        let samples = gaussian_cloud(4000);
        let est = estimate_density(&samples, None, &GridSpec::square(1.5, 161)).unwrap();
        let sample_m2 = samples.iter().map(|(x, y)| x * x + y * y).sum::<f64>()
            / samples.len() as f64;
        let (hx, hy) = est.bandwidth;
        // KDE adds the kernel variance per axis
        let expected = sample_m2 + hx * hx + hy * hy;
        assert!(
            (est.second_moment() - expected).abs() < 5e-3,
            "{} vs {}",
            est.second_moment(),
            expected
        );
    }
}
