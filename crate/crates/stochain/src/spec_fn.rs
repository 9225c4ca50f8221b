//! Declarative scalar function specifications.
//!
//! Model coefficients are given as data, not code: a function over a closed
//! interval is one of `constant`, `polynomial` (coefficients in ascending
//! degree), or `tabulated` (sorted knots with linear interpolation). The two
//! kinds used by the chain model are the segment density `a(l)` and the
//! separable intensity `sigma(l, t) = f(l) * g(t)`.
//!
//! Everything that can be integrated exactly is: polynomials through their
//! antiderivative, tabulated functions through the trapezoid rule (exact for
//! piecewise-linear data). Squared tabulated functions fall back to composite
//! Simpson with at least 512 panels.

use serde::{Deserialize, Serialize};

use crate::error::Violation;
use crate::quadrature;

/// A scalar function of one variable on a closed interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionSpec1D {
    Constant {
        value: f64,
    },
    /// `coeffs[i]` multiplies `x^i`.
    Polynomial {
        coeffs: Vec<f64>,
    },
    /// Strictly increasing knots; linear interpolation between them.
    Tabulated {
        knots: Vec<f64>,
        values: Vec<f64>,
    },
}

impl FunctionSpec1D {
    pub fn constant(value: f64) -> Self {
        FunctionSpec1D::Constant { value }
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        FunctionSpec1D::Polynomial { coeffs }
    }

    pub fn tabulated(knots: Vec<f64>, values: Vec<f64>) -> Self {
        FunctionSpec1D::Tabulated { knots, values }
    }

    /// Evaluate at `x`. Outside a tabulated range the end values are held;
    /// domain checks live with the operations that own a domain.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            FunctionSpec1D::Constant { value } => *value,
            FunctionSpec1D::Polynomial { coeffs } => horner(coeffs, x),
            FunctionSpec1D::Tabulated { knots, values } => {
                if knots.is_empty() {
                    return f64::NAN;
                }
                if x <= knots[0] {
                    return values[0];
                }
                if x >= knots[knots.len() - 1] {
                    return values[values.len() - 1];
                }
                // partition_point returns the first knot > x, so the segment
                // is [idx-1, idx].
                let idx = knots.partition_point(|&k| k <= x);
                let (k0, k1) = (knots[idx - 1], knots[idx]);
                let (v0, v1) = (values[idx - 1], values[idx]);
                v0 + (v1 - v0) * (x - k0) / (k1 - k0)
            }
        }
    }

    /// Exact integral over `[x0, x1]` (trapezoid on knots for tabulated data,
    /// which is exact for the piecewise-linear interpolant).
    pub fn integral(&self, x0: f64, x1: f64) -> f64 {
        match self {
            FunctionSpec1D::Constant { value } => value * (x1 - x0),
            FunctionSpec1D::Polynomial { coeffs } => {
                let anti = antiderivative(coeffs);
                horner(&anti, x1) - horner(&anti, x0)
            }
            FunctionSpec1D::Tabulated { knots, .. } => {
                // Trapezoid over every (possibly partial) segment intersecting
                // [x0, x1]; exact because the interpolant is linear per segment.
                let mut total = 0.0;
                let mut lo = x0;
                // segments outside the knot span are constant extensions
                let first = knots[0];
                let last = knots[knots.len() - 1];
                if lo < first {
                    let hi = x1.min(first);
                    total += self.eval(first) * (hi - lo);
                    lo = hi;
                }
                for w in knots.windows(2) {
                    if lo >= x1 {
                        break;
                    }
                    let (k0, k1) = (w[0], w[1]);
                    if x1 <= k0 || lo >= k1 {
                        continue;
                    }
                    let a = lo.max(k0);
                    let b = x1.min(k1);
                    total += 0.5 * (self.eval(a) + self.eval(b)) * (b - a);
                    lo = b;
                }
                if lo < x1 {
                    total += self.eval(last) * (x1 - lo.max(last));
                }
                total
            }
        }
    }

    /// Integral of the square, `\int_{x0}^{x1} f(u)^2 du`. Exact for constant
    /// and polynomial specs; composite Simpson (>= 512 panels) otherwise.
    pub fn squared_integral(&self, x0: f64, x1: f64) -> f64 {
        match self {
            FunctionSpec1D::Constant { value } => value * value * (x1 - x0),
            FunctionSpec1D::Polynomial { coeffs } => {
                let sq = poly_multiply(coeffs, coeffs);
                let anti = antiderivative(&sq);
                horner(&anti, x1) - horner(&anti, x0)
            }
            FunctionSpec1D::Tabulated { .. } => {
                quadrature::simpson(|u| self.eval(u).powi(2), x0, x1, 512)
            }
        }
    }

    /// Derivative at `x`. Exact for constant/polynomial; central difference
    /// with step `1e-6 * scale` for tabulated data, one-sided at the ends of
    /// `[lo, hi]`.
    pub fn derivative_at(&self, x: f64, scale: f64, lo: f64, hi: f64) -> f64 {
        match self {
            FunctionSpec1D::Constant { .. } => 0.0,
            FunctionSpec1D::Polynomial { coeffs } => {
                let d = derivative(coeffs);
                horner(&d, x)
            }
            FunctionSpec1D::Tabulated { .. } => {
                let h = 1e-6 * scale;
                let a = (x - h).max(lo);
                let b = (x + h).min(hi);
                (self.eval(b) - self.eval(a)) / (b - a)
            }
        }
    }

    /// Structural checks shared by every use site. `span` is the interval the
    /// spec must cover (tabulated knots must reach both ends).
    pub fn validate(&self, path: &str, span: (f64, f64), out: &mut Vec<Violation>) {
        let mut push = |message: String| {
            out.push(Violation {
                path: path.to_string(),
                message,
            })
        };
        match self {
            FunctionSpec1D::Constant { value } => {
                if !value.is_finite() {
                    push("constant value must be finite".into());
                }
            }
            FunctionSpec1D::Polynomial { coeffs } => {
                if coeffs.is_empty() {
                    push("polynomial needs at least one coefficient".into());
                }
                if coeffs.iter().any(|c| !c.is_finite()) {
                    push("polynomial coefficients must be finite".into());
                }
            }
            FunctionSpec1D::Tabulated { knots, values } => {
                if knots.len() < 2 {
                    push("tabulated spec needs at least two knots".into());
                }
                if knots.len() != values.len() {
                    push(format!(
                        "knot/value length mismatch ({} vs {})",
                        knots.len(),
                        values.len()
                    ));
                }
                if knots.windows(2).any(|w| w[1] <= w[0]) {
                    push("knots must be strictly increasing".into());
                }
                if knots.iter().chain(values.iter()).any(|v| !v.is_finite()) {
                    push("knots and values must be finite".into());
                }
                if let (Some(&first), Some(&last)) = (knots.first(), knots.last()) {
                    if first > span.0 || last < span.1 {
                        push(format!(
                            "knots [{first}, {last}] must cover [{}, {}]",
                            span.0, span.1
                        ));
                    }
                }
            }
        }
    }

    /// Minimum over a dense probe grid; used for the positivity check.
    pub fn min_on_grid(&self, lo: f64, hi: f64, points: usize) -> f64 {
        let n = points.max(2);
        (0..n)
            .map(|i| self.eval(lo + (hi - lo) * i as f64 / (n - 1) as f64))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Separable two-variable intensity `sigma(l, t) = f(l) * g(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec2D {
    pub f: FunctionSpec1D,
    pub g: FunctionSpec1D,
}

impl FunctionSpec2D {
    pub fn new(f: FunctionSpec1D, g: FunctionSpec1D) -> Self {
        FunctionSpec2D { f, g }
    }

    pub fn eval(&self, l: f64, t: f64) -> f64 {
        self.f.eval(l) * self.g.eval(t)
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn antiderivative(coeffs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(0.0);
    for (i, &c) in coeffs.iter().enumerate() {
        out.push(c / (i as f64 + 1.0));
    }
    out
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

fn poly_multiply(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}
