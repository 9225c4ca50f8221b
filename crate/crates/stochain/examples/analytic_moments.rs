//! The nested-quadrature moment machinery: the ordered-simplex identity,
//! reference moment values, and the mean squared chain length.
//!
//! Run with `cargo run --release --example analytic_moments`.

use stochain::analytic::{mean_square_length, moment_pure, MomentRequest};
use stochain::config::ModelConfig;
use stochain::spec_fn::{FunctionSpec1D, FunctionSpec2D};

fn main() {
    // With the phase variance switched off the m-fold simplex integral must
    // collapse to (\int_0^1 a)^m: pure combinatorics, no randomness.
    let frozen = ModelConfig {
        a: FunctionSpec1D::polynomial(vec![1.0, 1.0]),
        sigma: FunctionSpec2D::new(FunctionSpec1D::constant(0.0), FunctionSpec1D::constant(1.0)),
        ..ModelConfig::default()
    }
    .validate()
    .unwrap();
    println!("simplex identity, a(l) = 1 + l, zero intensity: target 1.5^m");
    for m in 1..=3 {
        let got = moment_pure(&frozen, &MomentRequest::new(m, 1.0, 0.0)).unwrap();
        let target = 1.5f64.powi(m as i32);
        println!("  m = {m}: {got:.12}  (target {target}, rel err {:.2e})",
                 (got - target).abs() / target);
    }

    // Unit chain with unit intensity: the moments that every Monte Carlo
    // layer is checked against.
    let unit = ModelConfig::default().validate().unwrap();
    println!("\nunit chain (a = 1, sigma = 1, kappa = 1), l = 1, t = 1:");
    for m in 0..=3 {
        let v = moment_pure(&unit, &MomentRequest::new(m, 1.0, 1.0)).unwrap();
        println!("  E[(x - iy)^{m}] = {v:.9}");
    }

    for kappa in [1.0, 0.5] {
        let cfg = ModelConfig {
            kappa,
            ..ModelConfig::default()
        }
        .validate()
        .unwrap();
        let msl = mean_square_length(&cfg, 1.0, 1.0, 2001).unwrap();
        println!("\nmean square length at kappa = {kappa}: {msl:.9}");
    }
    println!("\nclosed forms: 8 e^(-1/2) - 4 = 0.852245278 and 32 e^(-1/4) - 24 = 0.921625058");
}
