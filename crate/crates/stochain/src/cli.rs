//! Command-line interface: one thin binary with a subcommand per experiment.
//!
//! Exit-code contract (stable): 0 success, 1 configuration/usage error,
//! 2 numerical failure, 3 verification failure. Every run writes a JSON
//! manifest next to its outputs with the fully resolved configuration and
//! flag values; re-running with the same manifest reproduces the CSV
//! payloads byte for byte (manifest timestamps aside), independent of
//! `--workers`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analytic::{feller_mean_square, mean_square_length, moment_pure, MomentRequest, Variant};
use crate::config::{ModelConfig, ValidatedConfig, DEFAULT_SEED, SEED_ENV_VAR};
use crate::density::{estimate_density, silverman_bandwidth, GridSpec};
use crate::ensemble::{run_feller_ensemble, run_field_ensemble, FieldKind};
use crate::error::{Error, Result};
use crate::estimators::{compare_fields, estimate_char_function};
use crate::report::{self, RunManifest, ValueRow};
use crate::rng::RngPolicy;
use crate::sde::{integrate_path, run_sde_ensemble, IntegratorConfig, Scheme};
use crate::svg;
use crate::verify::{run_verify, Level, Status};

#[derive(Parser, Debug)]
#[command(
    name = "stochain",
    version,
    about = "Random-chain simulation and verification toolkit",
    after_help = "Seed precedence: --seed, then the config file, then \
                  STOCHAIN_SEED, then 42."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON model configuration (defaults to the built-in unit chain).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Master seed override.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Trajectory count override for ensemble commands.
    #[arg(long, global = true, value_name = "M")]
    trajectories: Option<usize>,

    /// Time parameter override (defaults to the config horizon T).
    #[arg(long, global = true, value_name = "REAL")]
    t: Option<f64>,

    /// Variance-scaling override (wins over --variant).
    #[arg(long, global = true, value_name = "REAL")]
    kappa: Option<f64>,

    /// Normalization shorthand: oracle sets kappa = 1, paper sets
    /// kappa = 0.5. An explicit --kappa wins.
    #[arg(long, global = true, value_enum)]
    variant: Option<CliVariant>,

    /// Rayon worker count (results are identical for any value).
    #[arg(long, global = true, value_name = "K")]
    workers: Option<usize>,

    /// Output directory.
    #[arg(long, global = true, default_value = "out", value_name = "DIR")]
    out: PathBuf,

    /// Also write SVG plots where supported.
    #[arg(long, global = true)]
    plot: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliVariant {
    Paper,
    Oracle,
}

impl CliVariant {
    fn kappa(self) -> f64 {
        match self {
            CliVariant::Paper => 0.5,
            CliVariant::Oracle => 1.0,
        }
    }

    fn variant(self) -> Variant {
        match self {
            CliVariant::Paper => Variant::Paper,
            CliVariant::Oracle => Variant::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Original,
    Hat,
    SdeEuler,
    SdeExact,
}

impl Which {
    fn label(self) -> &'static str {
        match self {
            Which::Original => "original",
            Which::Hat => "hat",
            Which::SdeEuler => "sde-euler",
            Which::SdeExact => "sde-exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliLevel {
    Quick,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fixed-angle reference chain: closed formula vs Monte Carlo.
    Feller {
        /// Component count.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Turn angle in radians.
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
        alpha: f64,
    },
    /// Simulate an endpoint ensemble of one field.
    Simulate {
        #[arg(long, value_enum)]
        which: Which,
        /// Dump the first K trajectories as path CSVs (SDE kinds only).
        #[arg(long, value_name = "K")]
        paths: Option<usize>,
        /// SDE step in l (defaults to the site spacing delta).
        #[arg(long, value_name = "REAL")]
        h: Option<f64>,
    },
    /// Nested-quadrature complex moments E[(x - i y)^m], m = 0..=M.
    Moments {
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Prefix length (defaults to n * delta).
        #[arg(long, value_name = "REAL")]
        l: Option<f64>,
    },
    /// Mean squared chain length of the limit field by quadrature.
    Msl {
        #[arg(long, value_name = "REAL")]
        l: Option<f64>,
    },
    /// Empirical characteristic function of an endpoint ensemble.
    Cf {
        #[arg(long, value_enum, default_value = "hat")]
        which: Which,
        /// Comma-separated alpha values.
        #[arg(long, default_value = "-2,-1,0,1,2", value_name = "LIST")]
        alphas: String,
        /// Comma-separated beta values.
        #[arg(long, default_value = "-2,-1,0,1,2", value_name = "LIST")]
        betas: String,
        #[arg(long, value_name = "REAL")]
        h: Option<f64>,
    },
    /// Kernel density estimate of the endpoint distribution.
    Density {
        #[arg(long, value_enum, default_value = "hat")]
        which: Which,
        /// Per-axis Gaussian bandwidth (defaults to Silverman's rule).
        #[arg(long, value_name = "REAL")]
        bandwidth: Option<f64>,
        /// Grid nodes per axis.
        #[arg(long, default_value_t = 161)]
        grid_points: usize,
        #[arg(long, value_name = "REAL")]
        h: Option<f64>,
    },
    /// Compare two characteristic-function CSVs point by point.
    Compare {
        /// First cf CSV.
        #[arg(long, value_name = "PATH")]
        a: PathBuf,
        /// Second cf CSV.
        #[arg(long, value_name = "PATH")]
        b: PathBuf,
    },
    /// Run the built-in verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: CliLevel,
    },
}

/// Parse arguments, execute, and map the outcome onto the exit-code
/// contract.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code =
                if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                    0
                } else {
                    1
                };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let workers = cli.workers;
    match workers {
        Some(k) if k > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Estimator(format!("worker pool: {e}")))?;
            pool.install(|| run_command(&cli))
        }
        _ => run_command(&cli),
    }
}

/// Resolve config file, kappa/variant and seed into a validated config.
fn resolve_config(cli: &Cli) -> Result<ValidatedConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ModelConfig::from_json(&std::fs::read_to_string(path)?)?,
        None => ModelConfig::default(),
    };
    if let Some(kappa) = cli.kappa {
        cfg.kappa = kappa;
    } else if let Some(variant) = cli.variant {
        cfg.kappa = variant.kappa();
    }
    let seed = cli
        .seed
        .or(cfg.seed)
        .map(Ok)
        .unwrap_or_else(|| match std::env::var(SEED_ENV_VAR) {
            Ok(text) => text.parse::<u64>().map_err(|_| {
                Error::Domain(format!("{SEED_ENV_VAR} must be an unsigned 64-bit integer"))
            }),
            Err(_) => Ok(DEFAULT_SEED),
        })?;
    cfg.seed = Some(seed);
    cfg.validate()
}

fn manifest_for(cli: &Cli, cfg: &ValidatedConfig, subcommand: &str) -> RunManifest {
    let mut manifest = RunManifest::new(subcommand, cfg.raw().clone(), cfg.seed());
    manifest.flag("out", cli.out.display());
    manifest.flag("plot", cli.plot);
    if let Some(w) = cli.workers {
        manifest.flag("workers", w);
    }
    if let Some(t) = cli.t {
        manifest.flag("t", t);
    }
    if let Some(m) = cli.trajectories {
        manifest.flag("trajectories", m);
    }
    if let Some(v) = cli.variant {
        manifest.flag("variant", v.variant().label());
    }
    manifest
}

fn finish(
    mut manifest: RunManifest,
    out_dir: &Path,
    outputs: &[PathBuf],
    started: Instant,
) -> Result<()> {
    for path in outputs {
        manifest.output(path);
    }
    manifest.wall_clock_secs = started.elapsed().as_secs_f64();
    let path = out_dir.join(format!("manifest_{}.json", manifest.subcommand));
    manifest.write(&path)?;
    Ok(())
}

fn run_command(cli: &Cli) -> Result<i32> {
    std::fs::create_dir_all(&cli.out)?;
    let started = Instant::now();
    match &cli.command {
        Command::Feller { n, alpha } => cmd_feller(cli, *n, *alpha, started),
        Command::Simulate { which, paths, h } => cmd_simulate(cli, *which, *paths, *h, started),
        Command::Moments { m, l } => cmd_moments(cli, *m, *l, started),
        Command::Msl { l } => cmd_msl(cli, *l, started),
        Command::Cf {
            which,
            alphas,
            betas,
            h,
        } => cmd_cf(cli, *which, alphas, betas, *h, started),
        Command::Density {
            which,
            bandwidth,
            grid_points,
            h,
        } => cmd_density(cli, *which, *bandwidth, *grid_points, *h, started),
        Command::Compare { a, b } => cmd_compare(cli, a, b, started),
        Command::Verify { level } => cmd_verify(cli, *level, started),
    }
}

fn cmd_feller(cli: &Cli, n: usize, alpha: f64, started: Instant) -> Result<i32> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if !(0.0..=std::f64::consts::PI).contains(&alpha) {
        return Err(Error::Domain(format!("alpha {alpha} outside [0, pi]")));
    }
    let cfg = resolve_config(cli)?;
    let m = cli.trajectories.unwrap_or(200_000);
    let policy = RngPolicy::new(cfg.seed());

    let formula = feller_mean_square(n, alpha);
    let ens = run_feller_ensemble(&policy, n, alpha, m);
    let stat = ens.stats.stats[0].clone();
    let z = if stat.stderr > 0.0 {
        (stat.mean - formula) / stat.stderr
    } else {
        0.0
    };

    let mut stats = ens.stats.clone();
    stats.stats = vec![
        crate::ensemble::Stat {
            name: "feller_formula".into(),
            mean: formula,
            stderr: 0.0,
        },
        crate::ensemble::Stat {
            name: "feller_mc".into(),
            mean: stat.mean,
            stderr: stat.stderr,
        },
        crate::ensemble::Stat {
            name: "feller_z".into(),
            mean: z,
            stderr: 0.0,
        },
    ];
    let path = cli.out.join("feller.csv");
    report::write_stats_csv(&path, &stats)?;

    println!(
        "feller n={n} alpha={alpha:.6}: formula {formula:.6}, MC {:.6} +- {:.6} (z = {z:.2}, M = {m})",
        stat.mean, stat.stderr
    );

    let mut manifest = manifest_for(cli, &cfg, "feller");
    manifest.flag("n", n).flag("alpha", alpha).flag("m", m);
    finish(manifest, &cli.out, &[path], started)?;
    Ok(0)
}

/// Shared ensemble runner for the four `--which` kinds.
fn endpoints_for(
    cfg: &ValidatedConfig,
    which: Which,
    t: f64,
    m: usize,
    h: Option<f64>,
) -> Result<(Vec<(f64, f64)>, crate::ensemble::EnsembleStats)> {
    match which {
        Which::Original => {
            let ens = run_field_ensemble(cfg, t, FieldKind::Original, m)?;
            Ok((ens.endpoints, ens.stats))
        }
        Which::Hat => {
            let ens = run_field_ensemble(cfg, t, FieldKind::Hat, m)?;
            Ok((ens.endpoints, ens.stats))
        }
        Which::SdeEuler | Which::SdeExact => {
            let scheme = if which == Which::SdeEuler {
                Scheme::Euler
            } else {
                Scheme::ExactAngle
            };
            let icfg = IntegratorConfig::new(scheme, h.unwrap_or_else(|| cfg.delta()), t);
            let ens = run_sde_ensemble(cfg, &icfg, m)?;
            Ok((ens.endpoints, ens.stats))
        }
    }
}

fn cmd_simulate(
    cli: &Cli,
    which: Which,
    paths: Option<usize>,
    h: Option<f64>,
    started: Instant,
) -> Result<i32> {
    let cfg = resolve_config(cli)?;
    let t = cli.t.unwrap_or(cfg.horizon());
    let m = cli.trajectories.unwrap_or(20_000);
    let mut outputs = Vec::new();

    let (endpoints, stats) = endpoints_for(&cfg, which, t, m, h)?;
    let endpoints_path = cli.out.join(format!("endpoints_{}.csv", which.label()));
    report::write_endpoints_csv(&endpoints_path, &endpoints)?;
    outputs.push(endpoints_path);
    let summary_path = cli.out.join(format!("summary_{}.csv", which.label()));
    report::write_stats_csv(&summary_path, &stats)?;
    outputs.push(summary_path);

    if let Some(k) = paths {
        let scheme = match which {
            Which::SdeEuler => Scheme::Euler,
            Which::SdeExact => Scheme::ExactAngle,
            _ => {
                return Err(Error::Domain(
                    "--paths dumps are supported for sde-euler and sde-exact only".into(),
                ))
            }
        };
        let icfg = IntegratorConfig::new(scheme, h.unwrap_or_else(|| cfg.delta()), t);
        for trajectory in 0..k.min(m) as u64 {
            let path = integrate_path(&cfg, &icfg, trajectory)?;
            let file = cli
                .out
                .join(format!("path_{}_{trajectory}.csv", which.label()));
            report::write_path_csv(&file, &path)?;
            outputs.push(file);
        }
    }

    for s in &stats.stats {
        println!(
            "{} {}: {} = {:.6} +- {:.6} (M = {m}, t = {t})",
            "simulate",
            which.label(),
            s.name,
            s.mean,
            s.stderr
        );
    }

    let mut manifest = manifest_for(cli, &cfg, "simulate");
    manifest.flag("which", which.label()).flag("m", m).flag("t_used", t);
    if let Some(h) = h {
        manifest.flag("h", h);
    }
    if let Some(k) = paths {
        manifest.flag("paths", k);
    }
    finish(manifest, &cli.out, &outputs, started)?;
    Ok(0)
}

fn cmd_moments(cli: &Cli, m_max: usize, l: Option<f64>, started: Instant) -> Result<i32> {
    let cfg = resolve_config(cli)?;
    let t = cli.t.unwrap_or(cfg.horizon());
    let l = l.unwrap_or_else(|| cfg.l_max());
    let mut rows = Vec::new();
    for m in 0..=m_max {
        let value = moment_pure(&cfg, &MomentRequest::new(m, l, t))?;
        println!("moment m={m} at l={l}, t={t}, kappa={}: {value:.9}", cfg.kappa());
        rows.push(ValueRow {
            quantity: "moment".into(),
            m: Some(m),
            l,
            t,
            kappa: cfg.kappa(),
            value,
            method: "quadrature".into(),
        });
    }
    let path = cli.out.join("moments.csv");
    report::write_values_csv(&path, &rows)?;
    let mut manifest = manifest_for(cli, &cfg, "moments");
    manifest.flag("m", m_max).flag("l", l).flag("t_used", t);
    finish(manifest, &cli.out, &[path], started)?;
    Ok(0)
}

fn cmd_msl(cli: &Cli, l: Option<f64>, started: Instant) -> Result<i32> {
    let cfg = resolve_config(cli)?;
    let t = cli.t.unwrap_or(cfg.horizon());
    let l = l.unwrap_or_else(|| cfg.l_max());
    let value = mean_square_length(&cfg, l, t, 2001)?;
    println!(
        "mean_square_length at l={l}, t={t}, kappa={}: {value:.9}",
        cfg.kappa()
    );
    let rows = vec![ValueRow {
        quantity: "mean_square_length".into(),
        m: None,
        l,
        t,
        kappa: cfg.kappa(),
        value,
        method: "quadrature".into(),
    }];
    let path = cli.out.join("msl.csv");
    report::write_values_csv(&path, &rows)?;
    let mut manifest = manifest_for(cli, &cfg, "msl");
    manifest.flag("l", l).flag("t_used", t);
    finish(manifest, &cli.out, &[path], started)?;
    Ok(0)
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>> {
    let values: std::result::Result<Vec<f64>, _> =
        text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let values =
        values.map_err(|_| Error::Domain(format!("{what} must be a comma-separated list")))?;
    if values.is_empty() {
        return Err(Error::Domain(format!("{what} must not be empty")));
    }
    Ok(values)
}

fn cmd_cf(
    cli: &Cli,
    which: Which,
    alphas: &str,
    betas: &str,
    h: Option<f64>,
    started: Instant,
) -> Result<i32> {
    let cfg = resolve_config(cli)?;
    let t = cli.t.unwrap_or(cfg.horizon());
    let m = cli.trajectories.unwrap_or(20_000);
    let alphas = parse_list(alphas, "--alphas")?;
    let betas = parse_list(betas, "--betas")?;
    let mut grid = Vec::with_capacity(alphas.len() * betas.len());
    for &a in &alphas {
        for &b in &betas {
            grid.push((a, b));
        }
    }

    let (endpoints, _) = endpoints_for(&cfg, which, t, m, h)?;
    let cf = estimate_char_function(&endpoints, &grid)?;
    let path = cli.out.join(format!("cf_{}.csv", which.label()));
    report::write_cf_csv(&path, &cf)?;
    let mut outputs = vec![path];

    println!(
        "cf {}: {} grid points, M = {m}, t = {t}; |g(0,0)| = 1 by construction",
        which.label(),
        grid.len()
    );

    if cli.plot {
        // |g| heatmap over the (alpha, beta) grid (rows indexed by beta)
        let mut values = Vec::with_capacity(alphas.len() * betas.len());
        for bi in 0..betas.len() {
            for ai in 0..alphas.len() {
                let p = &cf.points[ai * betas.len() + bi];
                values.push((p.re * p.re + p.im * p.im).sqrt());
            }
        }
        let plot_path = cli.out.join(format!("cf_{}.svg", which.label()));
        svg::heatmap(
            &plot_path,
            &alphas,
            &betas,
            &values,
            &format!("|g(alpha, beta)| — {}", which.label()),
        )?;
        outputs.push(plot_path);
    }

    let mut manifest = manifest_for(cli, &cfg, "cf");
    manifest
        .flag("which", which.label())
        .flag("m", m)
        .flag("t_used", t)
        .flag("grid", format!("{}x{}", alphas.len(), betas.len()));
    finish(manifest, &cli.out, &outputs, started)?;
    Ok(0)
}

fn cmd_density(
    cli: &Cli,
    which: Which,
    bandwidth: Option<f64>,
    grid_points: usize,
    h: Option<f64>,
    started: Instant,
) -> Result<i32> {
    let cfg = resolve_config(cli)?;
    let t = cli.t.unwrap_or(cfg.horizon());
    let m = cli.trajectories.unwrap_or(20_000);
    let (endpoints, _) = endpoints_for(&cfg, which, t, m, h)?;

    let script_l = cfg.script_l();
    let bw = match bandwidth {
        Some(b) => (b, b),
        None => {
            let xs: Vec<f64> = endpoints.iter().map(|e| e.0).collect();
            let ys: Vec<f64> = endpoints.iter().map(|e| e.1).collect();
            let fallback = 2.0 * script_l / (grid_points.max(2) - 1) as f64;
            (
                silverman_bandwidth(&xs).max(fallback),
                silverman_bandwidth(&ys).max(fallback),
            )
        }
    };
    // cover [-script_l, script_l]^2 plus kernel tails
    let extent = script_l + 8.0 * bw.0.max(bw.1);
    let grid = GridSpec::square(extent, grid_points);
    let est = estimate_density(&endpoints, Some(bw), &grid)?;

    let density_path = cli.out.join(format!("density_{}.csv", which.label()));
    report::write_density_csv(&density_path, &est.xs, &est.ys, &est.rho)?;
    let mut outputs = vec![density_path];

    println!(
        "density {}: bandwidth ({:.4}, {:.4}), mass {:.6}, M = {m}, t = {t}",
        which.label(),
        est.bandwidth.0,
        est.bandwidth.1,
        est.mass
    );

    if cli.plot {
        let plot_path = cli.out.join(format!("density_{}.svg", which.label()));
        svg::heatmap(
            &plot_path,
            &est.xs,
            &est.ys,
            &est.rho,
            &format!("endpoint density — {}", which.label()),
        )?;
        outputs.push(plot_path);
    }

    let mut manifest = manifest_for(cli, &cfg, "density");
    manifest
        .flag("which", which.label())
        .flag("m", m)
        .flag("t_used", t)
        .flag("bandwidth", format!("{},{}", est.bandwidth.0, est.bandwidth.1))
        .flag("grid_points", grid_points);
    finish(manifest, &cli.out, &outputs, started)?;
    Ok(0)
}

fn cmd_compare(cli: &Cli, a: &Path, b: &Path, started: Instant) -> Result<i32> {
    let cfg = resolve_config(cli)?;
    let cf_a = report::read_cf_csv(a)?;
    let cf_b = report::read_cf_csv(b)?;
    let rep = compare_fields(&cf_a, &cf_b)?;
    let path = cli.out.join("compare.csv");
    report::write_comparison_csv(&path, &rep)?;
    println!(
        "compare: {} points, max |z| = {:.2}, sup |diff| = {:.3e} -> {} at {} sigma",
        rep.points.len(),
        rep.max_abs_z,
        rep.sup_abs_diff,
        if rep.pass { "PASS" } else { "MISMATCH" },
        rep.threshold
    );
    println!(
        "note: {} two-sided checks without multiplicity correction; the 4-sigma \
         threshold keeps the familywise false-alarm rate ~0.3% for a 5x5 grid",
        2 * rep.points.len()
    );
    let mut manifest = manifest_for(cli, &cfg, "compare");
    manifest
        .flag("a", a.display())
        .flag("b", b.display())
        .flag("pass", rep.pass);
    finish(manifest, &cli.out, &[path], started)?;
    Ok(0)
}

fn cmd_verify(cli: &Cli, level: CliLevel, started: Instant) -> Result<i32> {
    let cfg = resolve_config(cli)?;
    let lvl = match level {
        CliLevel::Quick => Level::Quick,
        CliLevel::Full => Level::Full,
    };
    let report = run_verify(&cfg, lvl);
    for check in &report.checks {
        println!("{}", check.line());
    }
    let highlight = cli.variant.map(|v| v.variant()).unwrap_or(Variant::Oracle);
    println!(
        "reference normalization for reported closed forms: {} (assertions always \
         test the oracle form)",
        highlight.label()
    );

    // machine-readable record of the same lines
    let path = cli.out.join("verify.csv");
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_path(&path)?;
    w.write_record(["check", "status", "seconds", "detail"])?;
    for c in &report.checks {
        w.write_record([
            c.name.clone(),
            match c.status {
                Status::Pass => "pass".into(),
                Status::Fail => "fail".into(),
                Status::Info => "info".into(),
            },
            format!("{:.3}", c.seconds),
            c.detail.clone(),
        ])?;
    }
    w.flush()?;

    let mut manifest = manifest_for(cli, &cfg, "verify");
    manifest.flag(
        "level",
        match lvl {
            Level::Quick => "quick",
            Level::Full => "full",
        },
    );
    manifest.flag("all_pass", report.all_pass());
    finish(manifest, &cli.out, &[path], started)?;

    if report.all_pass() {
        println!("verify: all oracle-form checks passed");
        Ok(0)
    } else {
        println!("verify: FAILURES present");
        Ok(3)
    }
}
