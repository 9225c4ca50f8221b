//! Crank-Nicolson solve of the phase forward equation
//! `d rho / d l = (eta_tilde^2 / 2) d^2 rho / d Phi^2` against the exact
//! heat kernel.
//!
//! Run with `cargo run --release --example phase_density`.

use stochain::config::ModelConfig;
use stochain::phase_density::{gaussian_pdf, solve_phase_density, PhaseGrid};

fn main() {
    let cfg = ModelConfig::default().validate().unwrap();
    let grid = PhaseGrid::symmetric(8.0, 2048);
    let sol = solve_phase_density(&cfg, 1.0, &grid, 1.0, 1000, None).unwrap();

    let target_var = sol.expected_variance(&cfg, 1.0).unwrap();
    println!("phase density after l = 1 at unit intensity (2048-point grid):");
    println!("  initial near-delta variance: {:.3e}", sol.initial_variance);
    println!(
        "  final variance:              {:.6}  (target {target_var:.6})",
        sol.variance
    );
    println!("  mass drift:                  {:.3e}", sol.mass_drift);
    println!("  L-inf vs heat kernel:        {:.3e}", sol.linf_vs_gaussian(target_var));

    println!("\n{:>8} {:>12} {:>12}", "Phi", "solved", "Gaussian");
    let n = sol.phi.len();
    let center = n / 2;
    for offset in [-480i64, -360, -240, -120, 0, 120, 240, 360, 480] {
        let i = (center as i64 + offset) as usize;
        println!(
            "{:>8.3} {:>12.6} {:>12.6}",
            sol.phi[i],
            sol.rho[i],
            gaussian_pdf(sol.phi[i], target_var)
        );
    }
}
