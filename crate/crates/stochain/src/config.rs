//! Model configuration: grids, coefficients, variance scaling, randomness.
//!
//! A [`ModelConfig`] describes one chain model instance:
//!
//! * segment density `a(l) > 0` on `[0, L]`, sites `l_j = j * delta` with
//!   `delta = L / N`, observed prefix `n <= N`;
//! * separable intensity `sigma(l, t) = f(l) * g(t)` on `[0, L] x [0, T]`,
//!   with `time_steps` points for inner Ito sums over `[0, t]`;
//! * the variance scaling `kappa` entering the substituted deterministic
//!   intensity `eta_tilde^2(l, t) = kappa * \int_0^t sigma^2(l, tau) dtau`
//!   (`kappa = 1` is the Monte-Carlo-consistent choice, `kappa = 0.5` the
//!   alternative published normalization);
//! * the master seed for reproducible substreams.
//!
//! Configs are validated once into a [`ValidatedConfig`]; all simulators and
//! analytic operations take the validated form, which is immutable and safe
//! to share across threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::rng::RngPolicy;
use crate::spec_fn::{FunctionSpec1D, FunctionSpec2D};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV_VAR: &str = "STOCHAIN_SEED";

/// JSON-facing model configuration. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub a: FunctionSpec1D,
    pub sigma: FunctionSpec2D,
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "N")]
    pub sites: usize,
    pub n: usize,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub time_steps: usize,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    /// Optional: when absent the seed is resolved from `--seed`, then the
    /// `STOCHAIN_SEED` environment variable, then [`DEFAULT_SEED`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn default_kappa() -> f64 {
    1.0
}

impl Default for ModelConfig {
    /// Unit chain: `a = 1`, `sigma = 1`, `L = 1`, `N = n = 400`, `T = 1`,
    /// 200 inner time steps, `kappa = 1`.
    fn default() -> Self {
        ModelConfig {
            a: FunctionSpec1D::constant(1.0),
            sigma: FunctionSpec2D::new(
                FunctionSpec1D::constant(1.0),
                FunctionSpec1D::constant(1.0),
            ),
            length: 1.0,
            sites: 400,
            n: 400,
            horizon: 1.0,
            time_steps: 200,
            kappa: 1.0,
            seed: None,
        }
    }
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Check every invariant; returns all violations, never a partial config.
    pub fn validate(self) -> Result<ValidatedConfig> {
        let mut violations = Vec::new();
        let mut push = |path: &str, message: String| {
            violations.push(Violation {
                path: path.to_string(),
                message,
            })
        };

        if !(self.length.is_finite() && self.length > 0.0) {
            push("L", "chain parameter length must be positive".into());
        }
        if self.sites == 0 {
            push("N", "site count must be at least 1".into());
        }
        if self.n == 0 {
            push("n", "observed prefix length must be at least 1".into());
        }
        if self.n > self.sites {
            push("n", format!("n must not exceed N ({} > {})", self.n, self.sites));
        }
        if !(self.horizon.is_finite() && self.horizon >= 0.0) {
            push("T", "horizon must be nonnegative".into());
        }
        if self.time_steps == 0 {
            push("time_steps", "time step count must be at least 1".into());
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            push("kappa", "variance scaling must be positive".into());
        }

        let span_l = (0.0, self.length.max(0.0));
        let span_t = (0.0, self.horizon.max(0.0));
        let before_a = violations.len();
        self.a.validate("a", span_l, &mut violations);
        let a_is_sound = violations.len() == before_a;
        self.sigma.f.validate("sigma.f", span_l, &mut violations);
        self.sigma.g.validate("sigma.g", span_t, &mut violations);

        // Positivity of a on a dense probe grid (10 points per site).
        if a_is_sound && self.length.is_finite() && self.length > 0.0 {
            let probe = self.a.min_on_grid(0.0, self.length, 10 * self.sites.max(1) + 1);
            if !(probe > 0.0) {
                violations.push(Violation {
                    path: "a".into(),
                    message: format!("a must be positive on [0, L] (probe minimum {probe})"),
                });
            }
        }

        if violations.is_empty() {
            Ok(ValidatedConfig { cfg: self })
        } else {
            Err(Error::Config(violations))
        }
    }
}

/// A [`ModelConfig`] whose invariants have been checked. Immutable.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig {
    cfg: ModelConfig,
}

impl ValidatedConfig {
    pub fn raw(&self) -> &ModelConfig {
        &self.cfg
    }

    /// Site spacing `delta = L / N`.
    pub fn delta(&self) -> f64 {
        self.cfg.length / self.cfg.sites as f64
    }

    /// Site position `l_j = j * delta` (1-based).
    pub fn site(&self, j: usize) -> f64 {
        j as f64 * self.delta()
    }

    /// Length of the observed prefix, `l = n * delta`.
    pub fn l_max(&self) -> f64 {
        self.site(self.cfg.n)
    }

    pub fn length(&self) -> f64 {
        self.cfg.length
    }

    pub fn sites(&self) -> usize {
        self.cfg.sites
    }

    pub fn prefix_len(&self) -> usize {
        self.cfg.n
    }

    pub fn horizon(&self) -> f64 {
        self.cfg.horizon
    }

    pub fn time_steps(&self) -> usize {
        self.cfg.time_steps
    }

    pub fn kappa(&self) -> f64 {
        self.cfg.kappa
    }

    pub fn seed(&self) -> u64 {
        self.cfg.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn rng_policy(&self) -> RngPolicy {
        RngPolicy::new(self.seed())
    }

    pub fn a(&self) -> &FunctionSpec1D {
        &self.cfg.a
    }

    pub fn sigma(&self) -> &FunctionSpec2D {
        &self.cfg.sigma
    }

    /// Evaluate `a(l)`; `l` must lie in `[0, L]`.
    pub fn eval_a(&self, l: f64) -> Result<f64> {
        self.check_l(l)?;
        Ok(self.cfg.a.eval(l))
    }

    /// `\int_{l0}^{l1} a(u) du`, exact per spec kind; bounds must be ordered.
    pub fn integral_a(&self, l0: f64, l1: f64) -> Result<f64> {
        self.check_l(l0)?;
        self.check_l(l1)?;
        if l0 > l1 {
            return Err(Error::Domain(format!(
                "reversed integration bounds: {l0} > {l1}"
            )));
        }
        Ok(self.cfg.a.integral(l0, l1))
    }

    /// Total rest length `script-L = \int_0^L a`.
    pub fn script_l(&self) -> f64 {
        self.cfg.a.integral(0.0, self.cfg.length)
    }

    /// Substituted squared intensity
    /// `eta_tilde^2(l, t) = kappa * \int_0^t sigma^2(l, tau) dtau`.
    ///
    /// Separability makes this `kappa * f(l)^2 * \int_0^t g^2`; the time
    /// integral is exact for constant/polynomial `g` and composite Simpson
    /// (>= 512 panels) for tabulated `g`.
    pub fn eta_tilde_sq(&self, l: f64, t: f64) -> Result<f64> {
        self.check_l(l)?;
        self.check_t(t)?;
        let fl = self.cfg.sigma.f.eval(l);
        Ok(self.cfg.kappa * fl * fl * self.cfg.sigma.g.squared_integral(0.0, t))
    }

    /// `\int_0^t g^2(tau) dtau`, shared factor of `eta_tilde_sq` across sites.
    pub fn g_squared_integral(&self, t: f64) -> Result<f64> {
        self.check_t(t)?;
        Ok(self.cfg.sigma.g.squared_integral(0.0, t))
    }

    /// `\int_0^u f^2(theta) dtheta`, the spatial factor of the accumulated
    /// phase variance.
    pub fn f_squared_integral(&self, u: f64) -> f64 {
        self.cfg.sigma.f.squared_integral(0.0, u)
    }

    /// Accumulated phase variance of the substituted field,
    /// `V(u; t) = \int_0^u eta_tilde^2(theta, t) dtheta`.
    pub fn phase_variance(&self, u: f64, t: f64) -> Result<f64> {
        self.check_l(u)?;
        let g2 = self.g_squared_integral(t)?;
        Ok(self.cfg.kappa * g2 * self.f_squared_integral(u))
    }

    pub fn check_l(&self, l: f64) -> Result<()> {
        if !(l.is_finite() && (0.0..=self.cfg.length + 1e-12 * self.cfg.length).contains(&l)) {
            return Err(Error::Domain(format!(
                "position {l} outside [0, {}]",
                self.cfg.length
            )));
        }
        Ok(())
    }

    pub fn check_t(&self, t: f64) -> Result<()> {
        if !(t.is_finite() && t >= 0.0 && t <= self.cfg.horizon + 1e-12 * self.cfg.horizon.max(1.0))
        {
            return Err(Error::Domain(format!(
                "time {t} outside [0, {}]",
                self.cfg.horizon
            )));
        }
        Ok(())
    }
}
