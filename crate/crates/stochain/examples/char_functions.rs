//! Characteristic-function coincidence of the substituted discrete field
//! and the exact-angle SDE sampler, the statistical bridge between the
//! discrete and continuum layers.
//!
//! Run with `cargo run --release --example char_functions`.

use stochain::config::ModelConfig;
use stochain::ensemble::{run_field_ensemble, FieldKind};
use stochain::estimators::{compare_fields, estimate_char_function, square_grid};
use stochain::sde::{run_sde_ensemble, IntegratorConfig, Scheme};

fn main() {
    let cfg = ModelConfig {
        seed: Some(42),
        ..ModelConfig::default()
    }
    .validate()
    .unwrap();
    let m = 20_000;
    let grid = square_grid(&[-2.0, -1.0, 0.0, 1.0, 2.0]);

    let hat = run_field_ensemble(&cfg, 1.0, FieldKind::Hat, m).unwrap();
    let icfg = IntegratorConfig::new(Scheme::ExactAngle, cfg.delta(), 1.0);
    let sde = run_sde_ensemble(&cfg, &icfg, m).unwrap();

    let cf_hat = estimate_char_function(&hat.endpoints, &grid).unwrap();
    let cf_sde = estimate_char_function(&sde.endpoints, &grid).unwrap();

    println!("empirical characteristic functions, M = {m} each\n");
    println!("{:>6} {:>6} {:>22} {:>22}", "alpha", "beta", "hat field", "exact-angle SDE");
    for (a, b) in cf_hat.points.iter().zip(&cf_sde.points) {
        if a.beta == 0.0 || a.alpha == a.beta {
            println!(
                "{:>6} {:>6} {:>11.4}{:>+9.4}i {:>11.4}{:>+9.4}i",
                a.alpha, a.beta, a.re, a.im, b.re, b.im
            );
        }
    }

    let report = compare_fields(&cf_hat, &cf_sde).unwrap();
    println!(
        "\ncomparison on the 5x5 grid: max |z| = {:.2}, sup |difference| = {:.3e}",
        report.max_abs_z, report.sup_abs_diff
    );
    println!(
        "verdict at 4 sigma: {}",
        if report.pass { "COINCIDE" } else { "MISMATCH" }
    );
}
