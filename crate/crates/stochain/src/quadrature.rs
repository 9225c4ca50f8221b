//! Fixed-grid quadrature rules.
//!
//! Everything here is deterministic composite quadrature on uniform grids:
//! no adaptivity, so results are reproducible and error bounds are easy to
//! reason about. `cumulative_integral` is the workhorse for the nested
//! ordered-simplex moment integrals, where tail integrals of grid functions
//! are needed at every node.

/// Composite Simpson rule with `panels` panels (rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    let n = panels.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Cumulative integral of a uniformly sampled function: returns `c` with
/// `c[i] ~= \int_{x_0}^{x_i} f`, `c[0] = 0`.
///
/// Each interval uses the cubic Newton-Cotes weights through four neighboring
/// samples (one-sided at the ends), giving fourth-order accuracy at every
/// node. Falls back to trapezoid/Simpson for fewer than four samples.
pub fn cumulative_integral(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut c = vec![0.0; n];
    if n < 2 {
        return c;
    }
    if n == 2 {
        c[1] = 0.5 * h * (values[0] + values[1]);
        return c;
    }
    if n == 3 {
        // quadratic through all three points
        c[1] = h / 12.0 * (5.0 * values[0] + 8.0 * values[1] - values[2]);
        c[2] = c[1] + h / 12.0 * (-values[0] + 8.0 * values[1] + 5.0 * values[2]);
        return c;
    }
    // first interval: one-sided cubic
    c[1] = h / 24.0 * (9.0 * values[0] + 19.0 * values[1] - 5.0 * values[2] + values[3]);
    for i in 1..n - 2 {
        let inc = h / 24.0
            * (-values[i - 1] + 13.0 * values[i] + 13.0 * values[i + 1] - values[i + 2]);
        c[i + 1] = c[i] + inc;
    }
    // last interval: one-sided cubic
    let inc = h / 24.0
        * (values[n - 4] - 5.0 * values[n - 3] + 19.0 * values[n - 2] + 9.0 * values[n - 1]);
    c[n - 1] = c[n - 2] + inc;
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 2);
        assert_relative_eq!(v, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn simpson_exp() {
        let v = simpson(f64::exp, 0.0, 1.0, 64);
        assert_relative_eq!(v, f64::exp(1.0) - 1.0, max_relative = 1e-8);
    }

    #[test]
    fn cumulative_matches_antiderivative() {
        let n = 101;
        let h = 1.0 / (n - 1) as f64;
        let values: Vec<f64> = (0..n).map(|i| (i as f64 * h).exp()).collect();
        let c = cumulative_integral(&values, h);
        for (i, ci) in c.iter().enumerate() {
            let exact = (i as f64 * h).exp() - 1.0;
            assert_relative_eq!(*ci, exact, epsilon = 1e-9);
        }
    }

    #[test]
    fn cumulative_exact_for_quadratic() {
        // integrand x^2, cumulative x^3/3; cubic rule integrates it exactly
        let n = 11;
        let h = 0.1;
        let values: Vec<f64> = (0..n).map(|i| (i as f64 * h).powi(2)).collect();
        let c = cumulative_integral(&values, h);
        let exact = 1.0f64 / 3.0;
        assert_relative_eq!(c[n - 1], exact, epsilon = 1e-14);
    }

    #[test]
    fn cumulative_tiny_inputs() {
        assert_eq!(cumulative_integral(&[1.0], 0.1), vec![0.0]);
        let c2 = cumulative_integral(&[1.0, 1.0], 0.5);
        assert_relative_eq!(c2[1], 0.5, epsilon = 1e-15);
        let c3 = cumulative_integral(&[0.0, 0.5, 1.0], 0.5);
        assert_relative_eq!(c3[2], 0.5, epsilon = 1e-15);
    }
}
