//! Statistical estimators over endpoint samples: empirical characteristic
//! functions, complex moments, and grid-wise field comparison.
//!
//! All reductions are sequential in sample order, so estimates are bitwise
//! reproducible regardless of how the samples were produced. Standard errors
//! are batch means over 20 index-contiguous batches, for both the real and
//! imaginary parts.

use crate::ensemble::batch_mean_stderr;
use crate::error::{Error, Result};

/// One grid point of an empirical characteristic function
/// `g(alpha, beta) = E[exp(i (alpha x + beta y))]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfPoint {
    pub alpha: f64,
    pub beta: f64,
    pub re: f64,
    pub im: f64,
    pub stderr_re: f64,
    pub stderr_im: f64,
}

/// Empirical characteristic function on a fixed `(alpha, beta)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CharFunctionGrid {
    pub points: Vec<CfPoint>,
    /// Sample count behind every point.
    pub m: usize,
}

impl CharFunctionGrid {
    pub fn grid(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.alpha, p.beta)).collect()
    }
}

/// Pointwise means and batch standard errors of `cos(alpha x + beta y)` and
/// `sin(alpha x + beta y)` over the endpoint samples.
pub fn estimate_char_function(
    samples: &[(f64, f64)],
    grid: &[(f64, f64)],
) -> Result<CharFunctionGrid> {
    if samples.is_empty() {
        return Err(Error::Estimator("empty sample set".into()));
    }
    let mut points = Vec::with_capacity(grid.len());
    let mut cos_vals = vec![0.0; samples.len()];
    let mut sin_vals = vec![0.0; samples.len()];
    for &(alpha, beta) in grid {
        for (i, &(x, y)) in samples.iter().enumerate() {
            let theta = alpha * x + beta * y;
            cos_vals[i] = theta.cos();
            sin_vals[i] = theta.sin();
        }
        let (re, stderr_re) = batch_mean_stderr(&cos_vals);
        let (im, stderr_im) = batch_mean_stderr(&sin_vals);
        points.push(CfPoint {
            alpha,
            beta,
            re,
            im,
            stderr_re,
            stderr_im,
        });
    }
    Ok(CharFunctionGrid {
        points,
        m: samples.len(),
    })
}

/// The square grid `{values} x {values}`, row-major in `alpha`.
pub fn square_grid(values: &[f64]) -> Vec<(f64, f64)> {
    let mut grid = Vec::with_capacity(values.len() * values.len());
    for &alpha in values {
        for &beta in values {
            grid.push((alpha, beta));
        }
    }
    grid
}

/// A complex moment estimate with per-component standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMoment {
    pub order: usize,
    pub re: f64,
    pub im: f64,
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub m: usize,
}

const MAX_MOMENT_ORDER: usize = 6;

/// `E[z^m]` with `z = x - i y` (the Euler recombination of the endpoint
/// pair), estimated as the sample mean of `(x_j - i y_j)^m`.
pub fn estimate_complex_moment(samples: &[(f64, f64)], order: usize) -> Result<ComplexMoment> {
    if samples.is_empty() {
        return Err(Error::Estimator("empty sample set".into()));
    }
    if order > MAX_MOMENT_ORDER {
        return Err(Error::Estimator(format!(
            "moment order {order} exceeds the cost guard m <= {MAX_MOMENT_ORDER}"
        )));
    }
    let mut re_vals = Vec::with_capacity(samples.len());
    let mut im_vals = Vec::with_capacity(samples.len());
    for &(x, y) in samples {
        // (x - i y)^order by repeated complex multiplication
        let (mut re, mut im) = (1.0, 0.0);
        for _ in 0..order {
            let nre = re * x - im * (-y);
            let nim = re * (-y) + im * x;
            re = nre;
            im = nim;
        }
        re_vals.push(re);
        im_vals.push(im);
    }
    let (re, stderr_re) = batch_mean_stderr(&re_vals);
    let (im, stderr_im) = batch_mean_stderr(&im_vals);
    Ok(ComplexMoment {
        order,
        re,
        im,
        stderr_re,
        stderr_im,
        m: samples.len(),
    })
}

/// Per-point z-score between two characteristic-function estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonPoint {
    pub alpha: f64,
    pub beta: f64,
    pub z_re: f64,
    pub z_im: f64,
}

/// Grid-wise comparison of two characteristic functions: per-point z-scores
/// of the real and imaginary parts against the combined standard error, the
/// sup-norm of the raw difference, and a pass/fail verdict at the 4-sigma
/// threshold. With ~50 comparisons per 5x5 grid the expected false-alarm
/// rate at 4 sigma is about 0.3% (no multiplicity correction is applied;
/// the threshold is deliberately conservative instead).
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub points: Vec<ComparisonPoint>,
    pub sup_abs_diff: f64,
    pub max_abs_z: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Compare two estimates on identical grids. A zero combined standard error
/// with a zero difference scores z = 0 (identical degenerate estimates).
pub fn compare_fields(a: &CharFunctionGrid, b: &CharFunctionGrid) -> Result<ComparisonReport> {
    if a.grid() != b.grid() {
        return Err(Error::Estimator(
            "characteristic-function grids do not match".into(),
        ));
    }
    let threshold = 4.0;
    let mut points = Vec::with_capacity(a.points.len());
    let mut sup_abs_diff: f64 = 0.0;
    let mut max_abs_z: f64 = 0.0;
    for (pa, pb) in a.points.iter().zip(&b.points) {
        let z = |da: f64, sa: f64, sb: f64| {
            let se = (sa * sa + sb * sb).sqrt();
            if se == 0.0 {
                if da == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                da / se
            }
        };
        let d_re = pa.re - pb.re;
        let d_im = pa.im - pb.im;
        let z_re = z(d_re, pa.stderr_re, pb.stderr_re);
        let z_im = z(d_im, pa.stderr_im, pb.stderr_im);
        sup_abs_diff = sup_abs_diff.max((d_re * d_re + d_im * d_im).sqrt());
        max_abs_z = max_abs_z.max(z_re.abs()).max(z_im.abs());
        points.push(ComparisonPoint {
            alpha: pa.alpha,
            beta: pa.beta,
            z_re,
            z_im,
        });
    }
    Ok(ComparisonReport {
        points,
        sup_abs_diff,
        max_abs_z,
        threshold,
        pass: max_abs_z < threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn two_point_samples() -> Vec<(f64, f64)> {
        (0..200)
            .map(|i| if i % 2 == 0 { (0.5, 0.25) } else { (-0.5, -0.25) })
            .collect()
    }

    #[test]
    fn origin_is_exactly_one() {
        let cf = estimate_char_function(&two_point_samples(), &[(0.0, 0.0)]).unwrap();
        let p = cf.points[0];
        assert_eq!((p.re, p.im), (1.0, 0.0));
        assert_eq!((p.stderr_re, p.stderr_im), (0.0, 0.0));
    }

    #[test]
    fn degenerate_distribution_gives_plane_wave() {
        let c = 0.75;
        let samples = vec![(c, 0.0); 150];
        let alpha = 1.3;
        let cf = estimate_char_function(&samples, &[(alpha, 0.0)]).unwrap();
        let p = cf.points[0];
        assert_relative_eq!(p.re, (alpha * c).cos(), max_relative = 1e-13);
        assert_relative_eq!(p.im, (alpha * c).sin(), max_relative = 1e-13);
        assert_eq!(p.stderr_re, 0.0);
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        // asymmetric sample cloud so the imaginary parts are nonzero
        let samples: Vec<(f64, f64)> = (0..97)
            .map(|i| (0.01 * i as f64 - 0.2, 0.007 * i as f64))
            .collect();
        let grid = [(1.0, 0.5), (-1.0, -0.5), (0.3, -0.7), (-0.3, 0.7)];
        let cf = estimate_char_function(&samples, &grid).unwrap();
        assert!(cf.points[0].im != 0.0 && cf.points[2].im != 0.0);
        assert_eq!(cf.points[0].re.to_bits(), cf.points[1].re.to_bits());
        assert_eq!(cf.points[0].im.to_bits(), (-cf.points[1].im).to_bits());
        assert_eq!(cf.points[2].re.to_bits(), cf.points[3].re.to_bits());
        assert_eq!(cf.points[2].im.to_bits(), (-cf.points[3].im).to_bits());
    }

    #[test]
    fn modulus_is_bounded() {
        let samples = two_point_samples();
        let grid = square_grid(&[-2.0, -1.0, 0.0, 1.0, 2.0]);
        let cf = estimate_char_function(&samples, &grid).unwrap();
        for p in &cf.points {
            let modulus = (p.re * p.re + p.im * p.im).sqrt();
            let slack = 4.0 * (p.stderr_re * p.stderr_re + p.stderr_im * p.stderr_im).sqrt();
            assert!(modulus <= 1.0 + slack + 1e-12);
        }
    }

    #[test]
    fn empty_samples_is_an_error() {
        assert!(estimate_char_function(&[], &[(0.0, 0.0)]).is_err());
        assert!(estimate_complex_moment(&[], 1).is_err());
    }

    #[test]
    fn zeroth_moment_is_one() {
        let m = estimate_complex_moment(&two_point_samples(), 0).unwrap();
        assert_eq!((m.re, m.im), (1.0, 0.0));
        assert_eq!(m.stderr_re, 0.0);
    }

    #[test]
    fn first_moment_is_conjugate_mean() {
        let samples = vec![(0.5, 0.25); 100];
        let m = estimate_complex_moment(&samples, 1).unwrap();
        assert_eq!(m.re, 0.5);
        assert_eq!(m.im, -0.25);
    }

    #[test]
    fn second_moment_expands_correctly() {
        // (x - i y)^2 = x^2 - y^2 - 2 i x y
        let samples = vec![(0.5, 0.25); 100];
        let m = estimate_complex_moment(&samples, 2).unwrap();
        assert_relative_eq!(m.re, 0.5 * 0.5 - 0.25 * 0.25, max_relative = 1e-15);
        assert_relative_eq!(m.im, -2.0 * 0.5 * 0.25, max_relative = 1e-15);
    }

    #[test]
    fn moment_order_guard() {
        assert!(estimate_complex_moment(&two_point_samples(), 7).is_err());
    }

    #[test]
    fn self_comparison_is_all_zero() {
        let samples = two_point_samples();
        let grid = square_grid(&[-1.0, 0.0, 1.0]);
        let cf = estimate_char_function(&samples, &grid).unwrap();
        let report = compare_fields(&cf, &cf).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_abs_z, 0.0);
        assert_eq!(report.sup_abs_diff, 0.0);
        assert!(report.points.iter().all(|p| p.z_re == 0.0 && p.z_im == 0.0));
    }

    #[test]
    fn mismatched_grids_error() {
        let samples = two_point_samples();
        let a = estimate_char_function(&samples, &[(0.0, 0.0)]).unwrap();
        let b = estimate_char_function(&samples, &[(1.0, 0.0)]).unwrap();
        assert!(compare_fields(&a, &b).is_err());
    }
}
