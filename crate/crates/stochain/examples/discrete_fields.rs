//! The two discrete chain fields side by side, and the variance-scaling
//! adjudication.
//!
//! The original field draws a random intensity per site (a full inner
//! Wiener path each); the substituted field replaces that intensity with
//! the deterministic `eta_tilde = (kappa \int_0^t sigma^2)^{1/2}`. Their
//! endpoint statistics agree when `kappa = 1` and separate decisively when
//! `kappa = 0.5`, which is the whole point of keeping `kappa` a knob.
//!
//! Run with `cargo run --release --example discrete_fields`.

use stochain::config::ModelConfig;
use stochain::ensemble::{run_field_ensemble, FieldKind};

fn main() {
    let m = 20_000;
    for kappa in [1.0, 0.5] {
        let cfg = ModelConfig {
            sites: 200,
            n: 200,
            time_steps: 200,
            kappa,
            seed: Some(42),
            ..ModelConfig::default()
        }
        .validate()
        .expect("valid config");

        let original = run_field_ensemble(&cfg, 1.0, FieldKind::Original, m).unwrap();
        let hat = run_field_ensemble(&cfg, 1.0, FieldKind::Hat, m).unwrap();
        let xo = original.stats.get("x").unwrap();
        let xh = hat.stats.get("x").unwrap();
        let z = (xo.mean - xh.mean).abs() / (xo.stderr.powi(2) + xh.stderr.powi(2)).sqrt();

        println!("kappa = {kappa}  (M = {m}, n = 200, t = 1)");
        println!("  original field: E[x] = {:.5} +- {:.5}", xo.mean, xo.stderr);
        println!("  hat field:      E[x] = {:.5} +- {:.5}", xh.mean, xh.stderr);
        println!(
            "  first-moment z = {z:.2}  -> {}\n",
            if z < 4.0 {
                "fields statistically indistinguishable"
            } else {
                "fields separate (expected at kappa = 0.5)"
            }
        );
    }
}
