//! Monte Carlo adjudication of the averaged-exponential constants.
//!
//! Two pen-and-paper routes exist for `E[exp(-(a^2/2) \int eta^2)]`; they
//! differ by a factor of two in the exponent. Brute-force sampling decides:
//! the Gaussian identity `E[exp(-c W_t^2)] = (1 + 2ct)^{-1/2}` (the
//! "oracle" form) matches, the quarter-exponent ("paper") form does not.
//!
//! Run with `cargo run --release --example averaging_adjudication`.

use stochain::analytic::{finite_n_product, intensity_exp_moment, wiener_exp_moment, Variant};
use stochain::config::ModelConfig;
use stochain::ensemble::batch_mean_stderr;
use stochain::rng::{standard_normal, Component, RngPolicy};
use stochain::spec_fn::FunctionSpec1D;

fn main() {
    let policy = RngPolicy::new(42);
    let m = 1_000_000;

    // E[exp(alpha W(1))] = exp(alpha^2 / 2): deterministic-intensity moment.
    println!("E[exp(alpha W(1))], M = {m}:");
    let eta = FunctionSpec1D::constant(1.0);
    let mut stream = policy.stream(0, Component::SpatialIncrements);
    for alpha in [0.5, 1.0, 2.0] {
        let samples: Vec<f64> = (0..m)
            .map(|_| (alpha * standard_normal(&mut stream)).exp())
            .collect();
        let (mean, stderr) = batch_mean_stderr(&samples);
        let closed = wiener_exp_moment(alpha, &eta, 0.0, 1.0);
        println!("  alpha = {alpha}: MC {mean:.5} +- {stderr:.5}, closed form {closed:.5}");
    }

    // E[exp(-W(1)^2 / 2)]: the single-cell product form, where the two
    // normalizations disagree.
    let mut stream = policy.stream(1, Component::SpatialIncrements);
    let samples: Vec<f64> = (0..m)
        .map(|_| {
            let w = standard_normal(&mut stream);
            (-0.5 * w * w).exp()
        })
        .collect();
    let (mean, stderr) = batch_mean_stderr(&samples);
    let oracle = finite_n_product(1.0, 0.0, 1.0, 1.0, 1, Variant::Oracle);
    let paper = finite_n_product(1.0, 0.0, 1.0, 1.0, 1, Variant::Paper);
    println!("\nE[exp(-W(1)^2/2)], M = {m}:");
    println!("  MC     {mean:.6} +- {stderr:.6}");
    println!("  oracle {oracle:.6}   ({:.1} sigma away)", (mean - oracle).abs() / stderr);
    println!("  paper  {paper:.6}   ({:.1} sigma away)", (mean - paper).abs() / stderr);

    // The N -> infinity limits of the product forms.
    let cfg = ModelConfig::default().validate().unwrap();
    println!("\nfinite-resolution products at alpha = 1, span 1, t = 1:");
    println!("{:>8} {:>12} {:>12}", "N", "oracle", "paper");
    for n in [1usize, 10, 100, 10_000] {
        println!(
            "{n:>8} {:>12.6} {:>12.6}",
            finite_n_product(1.0, 0.0, 1.0, 1.0, n, Variant::Oracle),
            finite_n_product(1.0, 0.0, 1.0, 1.0, n, Variant::Paper)
        );
    }
    println!(
        "{:>8} {:>12.6} {:>12.6}",
        "limit",
        intensity_exp_moment(1.0, &cfg, 0.0, 1.0, 1.0, Variant::Oracle),
        intensity_exp_moment(1.0, &cfg, 0.0, 1.0, 1.0, Variant::Paper)
    );
}
