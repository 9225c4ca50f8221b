//! Reproducible Monte Carlo ensembles.
//!
//! Trajectories are independent units of work addressed by their index, so
//! they can run on any number of rayon workers without changing a single
//! bit of the output: each trajectory draws from its own substreams and
//! results are collected in trajectory order. Standard errors come from
//! batch means over 20 index-contiguous batches, which is likewise
//! independent of scheduling.

use rayon::prelude::*;

use crate::config::ValidatedConfig;
use crate::error::Result;
use crate::field::{simulate_field_hat, simulate_field_original};
use crate::rng::RngPolicy;

pub const BATCH_COUNT: usize = 20;

/// A named scalar statistic with its batch-means standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct Stat {
    pub name: String,
    pub mean: f64,
    pub stderr: f64,
}

/// Summary of one ensemble: sample count, seed provenance, statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStats {
    pub m: usize,
    pub seed: u64,
    pub stats: Vec<Stat>,
}

impl EnsembleStats {
    pub fn get(&self, name: &str) -> Option<&Stat> {
        self.stats.iter().find(|s| s.name == name)
    }
}

/// Mean and batch-means standard error of `samples`, using
/// `min(BATCH_COUNT, len)` index-contiguous batches.
pub fn batch_mean_stderr(samples: &[f64]) -> (f64, f64) {
    let m = samples.len();
    if m == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = samples.iter().sum::<f64>() / m as f64;
    let b = BATCH_COUNT.min(m);
    if b < 2 {
        return (mean, 0.0);
    }
    let mut batch_means = Vec::with_capacity(b);
    for k in 0..b {
        let lo = k * m / b;
        let hi = (k + 1) * m / b;
        let bm = samples[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
        batch_means.push(bm);
    }
    let grand = batch_means.iter().sum::<f64>() / b as f64;
    let var = batch_means.iter().map(|x| (x - grand).powi(2)).sum::<f64>() / (b - 1) as f64;
    (mean, (var / b as f64).sqrt())
}

/// Which discrete field to simulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    /// Double-stochastic field with random per-site intensities.
    Original,
    /// Substituted field with the deterministic intensity `eta_tilde`.
    Hat,
}

impl FieldKind {
    pub fn label(&self) -> &'static str {
        match self {
            FieldKind::Original => "original",
            FieldKind::Hat => "hat",
        }
    }
}

/// Endpoint ensemble of a discrete field, with raw samples retained for the
/// estimator layer.
#[derive(Debug, Clone)]
pub struct FieldEnsemble {
    pub kind: FieldKind,
    pub t: f64,
    pub endpoints: Vec<(f64, f64)>,
    pub stats: EnsembleStats,
}

/// Run `m` independent trajectories of the chosen field and summarize the
/// endpoint statistics `x`, `y` and `r2 = x^2 + y^2`.
pub fn run_field_ensemble(
    cfg: &ValidatedConfig,
    t: f64,
    kind: FieldKind,
    m: usize,
) -> Result<FieldEnsemble> {
    cfg.check_t(t)?;
    let endpoints: Vec<(f64, f64)> = (0..m as u64)
        .into_par_iter()
        .map(|trajectory| {
            let sample = match kind {
                FieldKind::Original => simulate_field_original(cfg, t, trajectory)?,
                FieldKind::Hat => simulate_field_hat(cfg, t, trajectory)?,
            };
            Ok(sample.endpoint())
        })
        .collect::<Result<Vec<_>>>()?;
    let stats = endpoint_stats(&endpoints, m, cfg.seed());
    Ok(FieldEnsemble {
        kind,
        t,
        endpoints,
        stats,
    })
}

pub(crate) fn endpoint_stats(endpoints: &[(f64, f64)], m: usize, seed: u64) -> EnsembleStats {
    let xs: Vec<f64> = endpoints.iter().map(|e| e.0).collect();
    let ys: Vec<f64> = endpoints.iter().map(|e| e.1).collect();
    let r2: Vec<f64> = endpoints.iter().map(|e| e.0 * e.0 + e.1 * e.1).collect();
    let mut stats = Vec::new();
    for (name, samples) in [("x", &xs), ("y", &ys), ("r2", &r2)] {
        let (mean, stderr) = batch_mean_stderr(samples);
        stats.push(Stat {
            name: name.to_string(),
            mean,
            stderr,
        });
    }
    EnsembleStats { m, seed, stats }
}

/// Fixed-angle chain ensemble: raw squared lengths plus summary.
#[derive(Debug, Clone)]
pub struct FellerEnsemble {
    pub n: usize,
    pub alpha: f64,
    pub samples: Vec<f64>,
    pub stats: EnsembleStats,
}

pub fn run_feller_ensemble(policy: &RngPolicy, n: usize, alpha: f64, m: usize) -> FellerEnsemble {
    let samples: Vec<f64> = (0..m as u64)
        .into_par_iter()
        .map(|trajectory| crate::field::simulate_feller_chain(policy, n, alpha, trajectory))
        .collect();
    let (mean, stderr) = batch_mean_stderr(&samples);
    FellerEnsemble {
        n,
        alpha,
        samples,
        stats: EnsembleStats {
            m,
            seed: policy.seed(),
            stats: vec![Stat {
                name: "l2".to_string(),
                mean,
                stderr,
            }],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::feller_mean_square;
    use crate::config::ModelConfig;

    fn small_cfg() -> ValidatedConfig {
        ModelConfig {
            sites: 50,
            n: 50,
            time_steps: 10,
            seed: Some(9),
            ..ModelConfig::default()
        }
        .validate()
        .unwrap()
    }

    #[test]
    fn constant_statistic_has_zero_stderr() {
        let samples = vec![3.25; 100];
        let (mean, stderr) = batch_mean_stderr(&samples);
        assert_eq!(mean, 3.25);
        assert_eq!(stderr, 0.0);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = small_cfg();
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_field_ensemble(&cfg, 1.0, FieldKind::Hat, 500).unwrap())
        };
        let a = run(1);
        let b = run(8);
        assert_eq!(a.endpoints, b.endpoints);
        for (sa, sb) in a.stats.stats.iter().zip(&b.stats.stats) {
            assert_eq!(sa.mean.to_bits(), sb.mean.to_bits());
            assert_eq!(sa.stderr.to_bits(), sb.stderr.to_bits());
        }
    }

    #[test]
    fn y_endpoint_is_symmetric_about_zero() {
        let cfg = small_cfg();
        let ens = run_field_ensemble(&cfg, 1.0, FieldKind::Hat, 4000).unwrap();
        let y = ens.stats.get("y").unwrap();
        assert!(
            y.mean.abs() <= 4.0 * y.stderr,
            "mean y = {} +- {}",
            y.mean,
            y.stderr
        );
    }

    #[test]
    fn feller_right_angle_mean_matches_formula() {
        // cos(pi/2) = 0 makes the formula exactly n.
        let policy = RngPolicy::new(5);
        let ens = run_feller_ensemble(&policy, 10, std::f64::consts::FRAC_PI_2, 20_000);
        let stat = &ens.stats.stats[0];
        let expected = feller_mean_square(10, std::f64::consts::FRAC_PI_2);
        assert!(
            (stat.mean - expected).abs() <= 4.0 * stat.stderr,
            "mean {} vs formula {expected} (stderr {})",
            stat.mean,
            stat.stderr
        );
    }

    #[test]
    fn stderr_scales_like_inverse_sqrt_m() {
        let policy = RngPolicy::new(5);
        let small = run_feller_ensemble(&policy, 10, 1.0, 10_000);
        let large = run_feller_ensemble(&policy, 10, 1.0, 20_000);
        let ratio = large.stats.stats[0].stderr / small.stats.stats[0].stderr;
        let expected = 1.0 / 2.0f64.sqrt();
        assert!(
            (ratio / expected - 1.0).abs() < 0.2,
            "stderr ratio {ratio} vs {expected}"
        );
    }
}
