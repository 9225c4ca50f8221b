//! Fixed-angle reference chain: the closed mean-square-length formula
//! against Monte Carlo ensembles.
//!
//! Run with `cargo run --release --example feller_chain`.

use stochain::analytic::feller_mean_square;
use stochain::ensemble::run_feller_ensemble;
use stochain::rng::RngPolicy;

fn main() {
    let policy = RngPolicy::new(42);
    let m = 200_000;

    println!("fixed-angle chain, M = {m} trajectories per row\n");
    println!("{:>4} {:>10} {:>12} {:>12} {:>10} {:>8}", "n", "alpha", "formula", "MC mean", "stderr", "z");
    for (n, alpha) in [
        (1, std::f64::consts::FRAC_PI_3),
        (10, std::f64::consts::FRAC_PI_3),
        (10, std::f64::consts::FRAC_PI_2),
        (10, 0.0),
        (25, 1.0),
    ] {
        let formula = feller_mean_square(n, alpha);
        let ens = run_feller_ensemble(&policy, n, alpha, m);
        let stat = &ens.stats.stats[0];
        let z = if stat.stderr > 0.0 {
            (stat.mean - formula) / stat.stderr
        } else {
            0.0
        };
        println!(
            "{n:>4} {alpha:>10.6} {formula:>12.6} {:>12.6} {:>10.6} {z:>8.2}",
            stat.mean, stat.stderr
        );
    }
    println!("\nalpha = pi/2 makes the formula exactly n; alpha = 0 gives the rigid rod n^2.");
}
