//! Monte Carlo simulation of the discrete chain fields.
//!
//! Three simulators share the site grid `l_s = s * delta`, `s = 1..n`:
//!
//! * [`simulate_field_original`]: the double-stochastic field. Each site `k`
//!   carries the random intensity `eta(l_k; t) = \int_0^t sigma(l_k, tau)
//!   dw_k(tau)` (independent inner Wiener path per site, left-point Ito sum
//!   on a uniform grid of `time_steps` points) and the angle accumulates
//!   `phi_s = sum_{k<=s} eta(l_k; t) dw(l_k)` with spatial increments
//!   `dw(l_k) ~ N(0, delta)`.
//! * [`simulate_field_hat`]: the substituted field. The random intensity is
//!   replaced by the deterministic `eta_tilde(l_j; t) = (kappa \int_0^t
//!   sigma^2)^{1/2}`, so only the spatial increments remain random.
//! * [`simulate_feller_chain`]: the fixed-angle reference chain (unit steps,
//!   relative turn of `+alpha` or `-alpha` with probability 1/2 each).
//!
//! Increments are ordinary independent forward Wiener increments, the only
//! construction consistent with the independence arguments behind the moment
//! formulas.

use crate::config::ValidatedConfig;
use crate::error::{Error, Result};
use crate::rng::{self, Component, RngPolicy};

/// One realized chain at fixed `t`: angles and coordinate prefix sums per
/// site, with seed provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub t: f64,
    pub n: usize,
    /// Realized cumulative angles `phi_s`, `s = 1..n` (radians).
    pub phi: Vec<f64>,
    /// Prefix sums `x_s = sum_{k<=s} a(l_k) delta cos(phi_k)`.
    pub x: Vec<f64>,
    /// Prefix sums `y_s = sum_{k<=s} a(l_k) delta sin(phi_k)`.
    pub y: Vec<f64>,
    pub trajectory: u64,
    pub seed: u64,
}

impl FieldSample {
    pub fn endpoint(&self) -> (f64, f64) {
        (self.x[self.n - 1], self.y[self.n - 1])
    }
}

/// Discrete triangle-inequality bound on the chain length,
/// `sum_{s<=n} a(l_s) delta`. Every realized endpoint satisfies
/// `x_n^2 + y_n^2 <= bound^2`.
pub fn discrete_length_bound(cfg: &ValidatedConfig) -> f64 {
    let delta = cfg.delta();
    (1..=cfg.prefix_len()).map(|s| cfg.a().eval(cfg.site(s)) * delta).sum()
}

fn check_finite(value: f64, site: usize, what: &str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::numerical(
            format!("site {site}"),
            format!("{what} is {value}"),
        ))
    }
}

/// Realized intensities `eta(l_k; t)` for one trajectory of the original
/// field: per-site left-point Ito sums over an independent inner Wiener path.
fn draw_intensities(
    cfg: &ValidatedConfig,
    t: f64,
    policy: &RngPolicy,
    trajectory: u64,
) -> Vec<f64> {
    let steps = cfg.time_steps();
    let dt = t / steps as f64;
    let sqrt_dt = dt.sqrt();
    // g(tau_j) at the left endpoints tau_j = j dt is shared by all sites.
    let g_left: Vec<f64> = (0..steps).map(|j| cfg.sigma().g.eval(j as f64 * dt)).collect();

    let mut inner = policy.stream(trajectory, Component::InnerPaths);
    (1..=cfg.prefix_len())
        .map(|k| {
            let f_k = cfg.sigma().f.eval(cfg.site(k));
            let mut ito_sum = 0.0;
            for &g in &g_left {
                ito_sum += g * sqrt_dt * rng::standard_normal(&mut inner);
            }
            f_k * ito_sum
        })
        .collect()
}

fn assemble_sample(
    cfg: &ValidatedConfig,
    t: f64,
    trajectory: u64,
    seed: u64,
    angle_increments: impl Iterator<Item = f64>,
) -> Result<FieldSample> {
    let n = cfg.prefix_len();
    let delta = cfg.delta();
    let mut phi = Vec::with_capacity(n);
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    let (mut angle, mut xs, mut ys) = (0.0, 0.0, 0.0);
    for (s, inc) in angle_increments.enumerate() {
        let site = s + 1;
        angle += inc;
        check_finite(angle, site, "angle")?;
        let al = cfg.a().eval(cfg.site(site)) * delta;
        xs += al * angle.cos();
        ys += al * angle.sin();
        phi.push(angle);
        x.push(xs);
        y.push(ys);
    }
    Ok(FieldSample {
        t,
        n,
        phi,
        x,
        y,
        trajectory,
        seed,
    })
}

/// One trajectory of the original (double-stochastic) field at time `t`.
pub fn simulate_field_original(
    cfg: &ValidatedConfig,
    t: f64,
    trajectory: u64,
) -> Result<FieldSample> {
    cfg.check_t(t)?;
    let policy = cfg.rng_policy();
    let intensities = draw_intensities(cfg, t, &policy, trajectory);
    let mut spatial = policy.stream(trajectory, Component::SpatialIncrements);
    let sqrt_delta = cfg.delta().sqrt();
    let increments = intensities
        .into_iter()
        .map(move |eta| eta * sqrt_delta * rng::standard_normal(&mut spatial));
    assemble_sample(cfg, t, trajectory, policy.seed(), increments)
}

/// One trajectory of the substituted (hat) field at time `t`: deterministic
/// intensity `eta_tilde`, random spatial increments only.
pub fn simulate_field_hat(cfg: &ValidatedConfig, t: f64, trajectory: u64) -> Result<FieldSample> {
    cfg.check_t(t)?;
    let policy = cfg.rng_policy();
    let g2 = cfg.g_squared_integral(t)?;
    let kappa = cfg.kappa();
    let eta_tilde: Vec<f64> = (1..=cfg.prefix_len())
        .map(|j| {
            let f = cfg.sigma().f.eval(cfg.site(j));
            (kappa * f * f * g2).sqrt()
        })
        .collect();
    let mut spatial = policy.stream(trajectory, Component::SpatialIncrements);
    let sqrt_delta = cfg.delta().sqrt();
    let increments = eta_tilde
        .into_iter()
        .map(move |e| e * sqrt_delta * rng::standard_normal(&mut spatial));
    assemble_sample(cfg, t, trajectory, policy.seed(), increments)
}

/// Squared end-to-end distance of one fixed-angle chain realization:
/// `n` unit steps; the heading of step `s` differs from the previous heading
/// by `+alpha` or `-alpha` with probability 1/2 each, `heading_1 = 0`.
pub fn simulate_feller_chain(policy: &RngPolicy, n: usize, alpha: f64, trajectory: u64) -> f64 {
    let mut signs = policy.stream(trajectory, Component::FellerSigns);
    let mut heading = 0.0;
    let (mut x, mut y) = (0.0, 0.0);
    for s in 1..=n {
        if s > 1 {
            heading += alpha * rng::sign(&mut signs);
        }
        x += heading.cos();
        y += heading.sin();
    }
    x * x + y * y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ModelConfig;
    use crate::spec_fn::{FunctionSpec1D, FunctionSpec2D};
    use approx::assert_relative_eq;

    fn small_cfg() -> ValidatedConfig {
        ModelConfig {
            sites: 50,
            n: 50,
            time_steps: 20,
            seed: Some(7),
            ..ModelConfig::default()
        }
        .validate()
        .unwrap()
    }

    fn zero_sigma_cfg() -> ValidatedConfig {
        ModelConfig {
            sigma: FunctionSpec2D::new(
                FunctionSpec1D::constant(0.0),
                FunctionSpec1D::constant(1.0),
            ),
            sites: 50,
            n: 50,
            time_steps: 20,
            seed: Some(7),
            ..ModelConfig::default()
        }
        .validate()
        .unwrap()
    }

    #[test]
    fn zero_intensity_gives_straight_chain() {
        let cfg = zero_sigma_cfg();
        let sample = simulate_field_original(&cfg, 1.0, 0).unwrap();
        assert!(sample.phi.iter().all(|&p| p == 0.0));
        let (x, y) = sample.endpoint();
        assert_relative_eq!(x, discrete_length_bound(&cfg), max_relative = 1e-12);
        assert_eq!(y, 0.0);
    }

    #[test]
    fn t_zero_matches_zero_intensity() {
        let cfg = small_cfg();
        let sample = simulate_field_original(&cfg, 0.0, 3).unwrap();
        let (x, y) = sample.endpoint();
        assert_relative_eq!(x, discrete_length_bound(&cfg), max_relative = 1e-12);
        assert_eq!(y, 0.0);

        let hat = simulate_field_hat(&cfg, 0.0, 3).unwrap();
        assert_eq!(hat.endpoint().0.to_bits(), x.to_bits());
    }

    #[test]
    fn triangle_inequality_holds() {
        let cfg = small_cfg();
        let bound = discrete_length_bound(&cfg);
        for trajectory in 0..20 {
            for sim in [simulate_field_original, simulate_field_hat] {
                let s = sim(&cfg, 1.0, trajectory).unwrap();
                let (x, y) = s.endpoint();
                assert!(x * x + y * y <= bound * bound * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn samples_are_bitwise_reproducible() {
        let cfg = small_cfg();
        let a = simulate_field_original(&cfg, 1.0, 11).unwrap();
        let b = simulate_field_original(&cfg, 1.0, 11).unwrap();
        assert_eq!(a, b);
        let xa: Vec<u64> = a.x.iter().map(|v| v.to_bits()).collect();
        let xb: Vec<u64> = b.x.iter().map(|v| v.to_bits()).collect();
        assert_eq!(xa, xb);
    }

    #[test]
    fn different_trajectories_differ() {
        let cfg = small_cfg();
        let a = simulate_field_hat(&cfg, 1.0, 0).unwrap();
        let b = simulate_field_hat(&cfg, 1.0, 1).unwrap();
        assert_ne!(a.endpoint(), b.endpoint());
    }

    #[test]
    fn feller_single_step() {
        let policy = RngPolicy::new(1);
        for trajectory in 0..8 {
            assert_eq!(simulate_feller_chain(&policy, 1, 1.0, trajectory), 1.0);
        }
    }

    #[test]
    fn feller_zero_angle_is_straight() {
        let policy = RngPolicy::new(1);
        assert_relative_eq!(
            simulate_feller_chain(&policy, 10, 0.0, 0),
            100.0,
            max_relative = 1e-12
        );
    }

    proptest::proptest! {
        // Every realization satisfies the triangle inequality against the
        // discrete bound, for random positive polynomial densities.
        #[test]
        fn hat_field_respects_length_bound(c0 in 0.5f64..2.0, c1 in 0.0f64..1.5,
                                           trajectory in 0u64..32) {
            let cfg = ModelConfig {
                a: FunctionSpec1D::polynomial(vec![c0, c1]),
                sites: 40,
                n: 40,
                time_steps: 8,
                seed: Some(3),
                ..ModelConfig::default()
            }.validate().unwrap();
            let s = simulate_field_hat(&cfg, 1.0, trajectory).unwrap();
            let (x, y) = s.endpoint();
            let bound = discrete_length_bound(&cfg);
            proptest::prop_assert!((x * x + y * y).sqrt() <= bound * (1.0 + 1e-12));
        }
    }
}
