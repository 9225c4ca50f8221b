//! Integration of the limit chain SDE system in the length variable `l` at
//! fixed time `t`.
//!
//! The limit field is `x(l) = \int_0^l a(u) cos(Phi(u)) du`,
//! `y(l) = \int_0^l a(u) sin(Phi(u)) du` with the Gaussian phase
//! `Phi(l) = \int_0^l eta_tilde(theta, t) dw(theta)`. Writing
//! `q = dx/dl = a cos(Phi)` and `p = dy/dl = a sin(Phi)`, Ito's formula gives
//!
//! ```text
//! d q = [ q d(ln a)/dl - (eta_tilde^2 / 2) q ] dl - eta_tilde p dw(l)
//! d p = [ p d(ln a)/dl - (eta_tilde^2 / 2) p ] dl + eta_tilde q dw(l)
//! d x = q dl,  d y = p dl
//! ```
//!
//! with `x = y = 0`, `q = a(0)`, `p = 0` at `l = 0` (the chain starts along
//! the x-axis, consistent with the integral form above; note `q` is the
//! cosine branch). The drift is written through `eta_tilde^2 = kappa
//! \int_0^t sigma^2 dtau`, so the coefficient pair stays consistent for any
//! variance scaling; `kappa = 0.5` reproduces the `-(1/4) \int sigma^2`
//! drift and `((1/2) \int sigma^2)^{1/2}` diffusion constants verbatim.
//!
//! Three schemes share the driving noise (common random numbers) when run on
//! the same `(seed, trajectory)`:
//!
//! * `Euler`: Euler-Maruyama, left-point coefficients, `x += q h` from the
//!   pre-step state;
//! * `ProjectedEuler`: Euler step followed by renormalization of `(q, p)`
//!   onto the circle of radius `a(l)`;
//! * `ExactAngle`: advances the phase increment exactly
//!   (`Phi += eta_tilde(l) sqrt(h) xi`) and sets `q = a cos(Phi)`,
//!   `p = a sin(Phi)`; exact in distribution for `(p, q)` at grid points,
//!   while `x, y` carry only the `O(h)` quadrature error of the right-point
//!   sum. This is the oracle the other schemes are measured against.
//!
//! Continuous dynamics preserve `p^2 + q^2 = a(l)^2`; the integrator tracks
//! the relative defect of that invariant at every step.

use rayon::prelude::*;

use crate::config::ValidatedConfig;
use crate::ensemble::{endpoint_stats, EnsembleStats};
use crate::error::{Error, Result};
use crate::rng::{self, Component};

/// Integration scheme for the limit system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Euler,
    ProjectedEuler,
    ExactAngle,
}

impl Scheme {
    pub fn label(&self) -> &'static str {
        match self {
            Scheme::Euler => "euler",
            Scheme::ProjectedEuler => "projected-euler",
            Scheme::ExactAngle => "exact-angle",
        }
    }
}

/// Integrator parameters: scheme, step, fixed time, recording stride.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig {
    pub scheme: Scheme,
    /// Step in `l`; must divide the output length `n * delta`.
    pub h: f64,
    /// Fixed time parameter of the coefficients.
    pub t: f64,
    /// Record every `record_stride`-th state (the initial and final states
    /// are always recorded).
    pub record_stride: usize,
}

impl IntegratorConfig {
    pub fn new(scheme: Scheme, h: f64, t: f64) -> Self {
        IntegratorConfig {
            scheme,
            h,
            t,
            record_stride: 1,
        }
    }
}

/// Integrator state at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdeState {
    pub l: f64,
    pub x: f64,
    pub y: f64,
    /// `p = dy/dl` (sine branch).
    pub p: f64,
    /// `q = dx/dl` (cosine branch).
    pub q: f64,
    /// Accumulated phase; meaningful for the exact-angle scheme only.
    pub phase: f64,
}

/// Frozen coefficients for one step starting at `l`:
/// `a(l + h)`, `d(ln a)/dl (l)` and `eta_tilde^2(l, t)`.
#[derive(Debug, Clone, Copy)]
pub struct StepCoeffs {
    pub a_next: f64,
    pub dlog_a: f64,
    pub eta_sq: f64,
}

/// Boundary state of the system: `x = y = 0`, `q = a(0)` (cosine branch),
/// `p = 0`, zero phase.
pub fn init_state(cfg: &ValidatedConfig) -> SdeState {
    SdeState {
        l: 0.0,
        x: 0.0,
        y: 0.0,
        p: 0.0,
        q: cfg.a().eval(0.0),
        phase: 0.0,
    }
}

/// Coefficients for the step `[l, l + h]`.
pub fn step_coeffs(cfg: &ValidatedConfig, l: f64, t: f64, h: f64) -> Result<StepCoeffs> {
    cfg.check_l(l)?;
    let a = cfg.a().eval(l);
    let da = cfg.a().derivative_at(l, cfg.length(), 0.0, cfg.length());
    Ok(StepCoeffs {
        a_next: cfg.a().eval((l + h).min(cfg.length())),
        dlog_a: da / a,
        eta_sq: cfg.eta_tilde_sq(l, t)?,
    })
}

/// One Euler-Maruyama step with `dw = sqrt(h) * noise`. `x, y` advance from
/// the pre-step `q, p` (left-point quadrature).
pub fn step_euler(state: &mut SdeState, c: &StepCoeffs, h: f64, noise: f64) {
    let eta = c.eta_sq.sqrt();
    let dw = h.sqrt() * noise;
    let (p, q) = (state.p, state.q);
    state.x += q * h;
    state.y += p * h;
    state.q += (q * c.dlog_a - 0.5 * c.eta_sq * q) * h - eta * p * dw;
    state.p += (p * c.dlog_a - 0.5 * c.eta_sq * p) * h + eta * q * dw;
    state.l += h;
}

/// Euler step followed by projection of `(q, p)` onto radius `a(l + h)`.
pub fn step_projected(state: &mut SdeState, c: &StepCoeffs, h: f64, noise: f64) {
    step_euler(state, c, h, noise);
    let norm = (state.p * state.p + state.q * state.q).sqrt();
    if norm > 0.0 {
        let scale = c.a_next / norm;
        state.p *= scale;
        state.q *= scale;
    }
}

/// Exact-angle step: the phase increment over `[l, l + h]` is Gaussian with
/// variance `eta_tilde^2(l, t) h`; `(q, p)` are then placed exactly on the
/// circle of radius `a(l + h)` and `x, y` advance by the right-point rule.
pub fn step_exact(state: &mut SdeState, c: &StepCoeffs, h: f64, noise: f64) {
    state.phase += c.eta_sq.sqrt() * h.sqrt() * noise;
    state.l += h;
    state.q = c.a_next * state.phase.cos();
    state.p = c.a_next * state.phase.sin();
    state.x += state.q * h;
    state.y += state.p * h;
}

/// One recorded point of a trajectory; `defect` is the relative radial
/// defect `|p^2 + q^2 - a(l)^2| / a(l)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPoint {
    pub l: f64,
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub q: f64,
    pub defect: f64,
}

/// A discretized trajectory of the system over `[0, n * delta]`.
#[derive(Debug, Clone)]
pub struct SdePath {
    pub scheme: Scheme,
    pub points: Vec<PathPoint>,
    /// Largest relative radial defect seen at any step (not only recorded
    /// ones).
    pub max_radial_defect: f64,
    /// Triangle-inequality bound accumulated on the integrator grid,
    /// `sum_k a(l_{k+1}) h`; exact-angle paths satisfy
    /// `sqrt(x^2 + y^2) <= bound` up to roundoff.
    pub length_bound: f64,
    pub trajectory: u64,
    pub seed: u64,
}

impl SdePath {
    pub fn endpoint(&self) -> (f64, f64) {
        let last = self.points.last().expect("path has at least the initial state");
        (last.x, last.y)
    }
}

/// Per-run tables of step coefficients on the uniform grid, shared by all
/// trajectories of an ensemble.
#[derive(Debug, Clone)]
pub struct StepTables {
    pub h: f64,
    pub steps: usize,
    coeffs: Vec<StepCoeffs>,
    /// `a(l_k)` at grid points `k = 0..=steps` for defect evaluation.
    a_grid: Vec<f64>,
}

impl StepTables {
    pub fn build(cfg: &ValidatedConfig, icfg: &IntegratorConfig) -> Result<StepTables> {
        let l_max = cfg.l_max();
        if !(icfg.h.is_finite() && icfg.h > 0.0) {
            return Err(Error::Domain(format!("step h = {} must be positive", icfg.h)));
        }
        cfg.check_t(icfg.t)?;
        let steps_f = l_max / icfg.h;
        let steps = steps_f.round() as usize;
        if steps == 0 || (steps as f64 * icfg.h - l_max).abs() > 1e-9 * l_max.max(1.0) {
            return Err(Error::Domain(format!(
                "step h = {} does not divide the path length {l_max}",
                icfg.h
            )));
        }
        let mut coeffs = Vec::with_capacity(steps);
        let mut a_grid = Vec::with_capacity(steps + 1);
        a_grid.push(cfg.a().eval(0.0));
        for k in 0..steps {
            let l = k as f64 * icfg.h;
            let c = step_coeffs(cfg, l, icfg.t, icfg.h)?;
            a_grid.push(c.a_next);
            coeffs.push(c);
        }
        Ok(StepTables {
            h: icfg.h,
            steps,
            coeffs,
            a_grid,
        })
    }
}

/// Integrate one trajectory with noise supplied by `noise`; draw `k` is used
/// for the step `[l_k, l_k + h]`. This is the coupling point for
/// common-random-number comparisons across schemes and step sizes.
pub fn integrate_path_with(
    cfg: &ValidatedConfig,
    scheme: Scheme,
    tables: &StepTables,
    record_stride: usize,
    mut noise: impl FnMut(usize) -> f64,
    trajectory: u64,
) -> Result<SdePath> {
    let stride = record_stride.max(1);
    let h = tables.h;
    let mut state = init_state(cfg);
    let mut points = Vec::new();
    let mut max_defect: f64 = 0.0;
    let mut length_bound = 0.0;

    let defect_at = |state: &SdeState, a: f64| {
        let r2 = state.p * state.p + state.q * state.q;
        (r2 - a * a).abs() / (a * a)
    };

    points.push(PathPoint {
        l: state.l,
        x: state.x,
        y: state.y,
        p: state.p,
        q: state.q,
        defect: defect_at(&state, tables.a_grid[0]),
    });

    for k in 0..tables.steps {
        let c = &tables.coeffs[k];
        let xi = noise(k);
        match scheme {
            Scheme::Euler => step_euler(&mut state, c, h, xi),
            Scheme::ProjectedEuler => step_projected(&mut state, c, h, xi),
            Scheme::ExactAngle => step_exact(&mut state, c, h, xi),
        }
        if !(state.x.is_finite() && state.y.is_finite() && state.p.is_finite()
            && state.q.is_finite())
        {
            return Err(Error::numerical(
                format!("l = {}", state.l),
                "non-finite integrator state".to_string(),
            ));
        }
        length_bound += c.a_next * h;
        let defect = defect_at(&state, tables.a_grid[k + 1]);
        max_defect = max_defect.max(defect);
        if (k + 1) % stride == 0 || k + 1 == tables.steps {
            points.push(PathPoint {
                l: state.l,
                x: state.x,
                y: state.y,
                p: state.p,
                q: state.q,
                defect,
            });
        }
    }

    Ok(SdePath {
        scheme,
        points,
        max_radial_defect: max_defect,
        length_bound,
        trajectory,
        seed: cfg.seed(),
    })
}

/// Integrate one trajectory with the substream noise owned by
/// `(seed, trajectory)`. Identical noise is used for every scheme, so scheme
/// comparisons on the same trajectory index are coupled by construction.
pub fn integrate_path(
    cfg: &ValidatedConfig,
    icfg: &IntegratorConfig,
    trajectory: u64,
) -> Result<SdePath> {
    let tables = StepTables::build(cfg, icfg)?;
    let mut stream = cfg.rng_policy().stream(trajectory, Component::SdeNoise);
    integrate_path_with(
        cfg,
        icfg.scheme,
        &tables,
        icfg.record_stride,
        |_| rng::standard_normal(&mut stream),
        trajectory,
    )
}

/// Endpoint ensemble of the SDE field.
#[derive(Debug, Clone)]
pub struct SdeEnsemble {
    pub scheme: Scheme,
    pub t: f64,
    pub endpoints: Vec<(f64, f64)>,
    pub stats: EnsembleStats,
    /// Largest relative radial defect across all trajectories and steps.
    pub max_radial_defect: f64,
}

/// Run `m` trajectories (endpoints only) and summarize `x`, `y`, `r2`.
pub fn run_sde_ensemble(
    cfg: &ValidatedConfig,
    icfg: &IntegratorConfig,
    m: usize,
) -> Result<SdeEnsemble> {
    let tables = StepTables::build(cfg, icfg)?;
    let results: Vec<((f64, f64), f64)> = (0..m as u64)
        .into_par_iter()
        .map(|trajectory| {
            let mut stream = cfg.rng_policy().stream(trajectory, Component::SdeNoise);
            let path = integrate_path_with(
                cfg,
                icfg.scheme,
                &tables,
                usize::MAX,
                |_| rng::standard_normal(&mut stream),
                trajectory,
            )?;
            Ok((path.endpoint(), path.max_radial_defect))
        })
        .collect::<Result<Vec<_>>>()?;
    let endpoints: Vec<(f64, f64)> = results.iter().map(|r| r.0).collect();
    let max_radial_defect = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let stats = endpoint_stats(&endpoints, m, cfg.seed());
    Ok(SdeEnsemble {
        scheme: icfg.scheme,
        t: icfg.t,
        endpoints,
        stats,
        max_radial_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ModelConfig;
    use crate::spec_fn::{FunctionSpec1D, FunctionSpec2D};
    use approx::assert_relative_eq;

    fn unit_cfg() -> ValidatedConfig {
        ModelConfig {
            seed: Some(11),
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
            seed: Some(11),
            ..ModelConfig::default()
        }
        .validate()
        .unwrap()
    }

    #[test]
    fn init_state_is_x_aligned() {
        let cfg = unit_cfg();
        let s = init_state(&cfg);
        assert_eq!((s.x, s.y, s.p, s.q), (0.0, 0.0, 0.0, 1.0));

        let cfg2 = ModelConfig {
            a: FunctionSpec1D::constant(2.0),
            ..ModelConfig::default()
        }
        .validate()
        .unwrap();
        assert_eq!(init_state(&cfg2).q, 2.0);
    }

    #[test]
    fn euler_with_zero_intensity_only_advances_x() {
        let cfg = zero_sigma_cfg();
        let c = step_coeffs(&cfg, 0.0, 1.0, 0.01).unwrap();
        let mut s = init_state(&cfg);
        step_euler(&mut s, &c, 0.01, 1.3);
        assert_eq!(s.p, 0.0);
        assert_eq!(s.q, 1.0);
        assert_relative_eq!(s.x, 0.01, max_relative = 1e-15);
        assert_eq!(s.y, 0.0);
    }

    #[test]
    fn t_zero_gives_straight_chain_for_all_schemes() {
        let cfg = unit_cfg();
        for scheme in [Scheme::Euler, Scheme::ProjectedEuler, Scheme::ExactAngle] {
            let icfg = IntegratorConfig::new(scheme, 0.0025, 0.0);
            let path = integrate_path(&cfg, &icfg, 0).unwrap();
            let (x, y) = path.endpoint();
            assert_relative_eq!(x, 1.0, max_relative = 1e-9);
            assert_eq!(y, 0.0);
        }
    }

    #[test]
    fn exact_angle_radial_defect_is_roundoff() {
        let cfg = unit_cfg();
        let icfg = IntegratorConfig::new(Scheme::ExactAngle, 0.005, 1.0);
        for trajectory in 0..16 {
            let path = integrate_path(&cfg, &icfg, trajectory).unwrap();
            assert!(
                path.max_radial_defect <= 1e-12,
                "defect {}",
                path.max_radial_defect
            );
        }
    }

    #[test]
    fn projected_euler_radial_defect_is_roundoff() {
        let cfg = unit_cfg();
        let icfg = IntegratorConfig::new(Scheme::ProjectedEuler, 0.005, 1.0);
        let path = integrate_path(&cfg, &icfg, 3).unwrap();
        assert!(path.max_radial_defect <= 1e-12);
    }

    #[test]
    fn exact_angle_respects_length_bound() {
        let cfg = ModelConfig {
            a: FunctionSpec1D::polynomial(vec![1.0, 0.5]),
            seed: Some(2),
            ..ModelConfig::default()
        }
        .validate()
        .unwrap();
        let icfg = IntegratorConfig::new(Scheme::ExactAngle, 0.0025, 1.0);
        for trajectory in 0..16 {
            let path = integrate_path(&cfg, &icfg, trajectory).unwrap();
            let (x, y) = path.endpoint();
            assert!((x * x + y * y).sqrt() <= path.length_bound + 1e-9);
        }
    }

    #[test]
    fn schemes_share_noise_and_euler_gap_shrinks_with_h() {
        // Common random numbers: halving h should roughly halve the
        // endpoint gap between Euler and the exact-angle oracle.
        let cfg = unit_cfg();
        let m = 400;
        let gap = |h: f64| {
            let euler = IntegratorConfig::new(Scheme::Euler, h, 1.0);
            let exact = IntegratorConfig::new(Scheme::ExactAngle, h, 1.0);
            let mut acc = 0.0;
            for trajectory in 0..m {
                let a = integrate_path(&cfg, &euler, trajectory).unwrap().endpoint();
                let b = integrate_path(&cfg, &exact, trajectory).unwrap().endpoint();
                acc += a.0 - b.0;
            }
            (acc / m as f64).abs()
        };
        let g1 = gap(0.01);
        let g2 = gap(0.005);
        assert!(g2 < g1, "gap did not shrink: {g1} -> {g2}");
    }

    #[test]
    fn phase_variance_matches_accumulated_intensity() {
        // Var(Phi at l) over an ensemble should match \int_0^l eta_tilde^2.
        let cfg = unit_cfg();
        let icfg = IntegratorConfig::new(Scheme::ExactAngle, 0.005, 1.0);
        let tables = StepTables::build(&cfg, &icfg).unwrap();
        let m = 4000;
        let mut phases = Vec::with_capacity(m);
        for trajectory in 0..m as u64 {
            let mut stream = cfg.rng_policy().stream(trajectory, Component::SdeNoise);
            let path = integrate_path_with(
                &cfg,
                Scheme::ExactAngle,
                &tables,
                usize::MAX,
                |_| rng::standard_normal(&mut stream),
                trajectory,
            )
            .unwrap();
            // recover the phase from the endpoint derivative pair
            let last = path.points.last().unwrap();
            phases.push(last.p.atan2(last.q));
        }
        // atan2 wraps, but at these parameters |Phi| < pi with overwhelming
        // probability, so the sample variance is a valid estimate.
        let mean = phases.iter().sum::<f64>() / m as f64;
        let var = phases.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
        let expected = cfg.phase_variance(1.0, 1.0).unwrap();
        let stderr = expected * (2.0 / (m as f64 - 1.0)).sqrt();
        assert!(
            (var - expected).abs() <= 4.0 * stderr,
            "phase variance {var} vs {expected} (stderr {stderr})"
        );
    }

    #[test]
    fn bad_step_is_rejected() {
        let cfg = unit_cfg();
        let icfg = IntegratorConfig::new(Scheme::Euler, 0.0301, 1.0);
        assert!(matches!(
            StepTables::build(&cfg, &icfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ensemble_is_worker_independent() {
        let cfg = unit_cfg();
        let icfg = IntegratorConfig::new(Scheme::ExactAngle, 0.01, 1.0);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_sde_ensemble(&cfg, &icfg, 300).unwrap())
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.endpoints, b.endpoints);
    }
}
