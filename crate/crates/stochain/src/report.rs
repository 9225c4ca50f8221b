//! CSV emission (RFC 4180: CRLF line endings, UTF-8, '.' decimal separator)
//! and the run manifest that makes every output reproducible.
//!
//! Floats are written with Rust's shortest-roundtrip formatting, which is
//! deterministic, so re-running a command with the same manifest produces
//! byte-identical CSV payloads.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::ModelConfig;
use crate::ensemble::EnsembleStats;
use crate::error::Result;
use crate::estimators::{CfPoint, CharFunctionGrid, ComparisonReport};
use crate::sde::SdePath;

fn writer(path: &Path) -> Result<csv::Writer<File>> {
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_path(path)?)
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

/// `statistic,mean,stderr,M,seed`
pub fn write_stats_csv(path: &Path, stats: &EnsembleStats) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["statistic", "mean", "stderr", "M", "seed"])?;
    for s in &stats.stats {
        w.write_record([
            s.name.clone(),
            fmt(s.mean),
            fmt(s.stderr),
            stats.m.to_string(),
            stats.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `trajectory,x,y`
pub fn write_endpoints_csv(path: &Path, endpoints: &[(f64, f64)]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["trajectory", "x", "y"])?;
    for (i, (x, y)) in endpoints.iter().enumerate() {
        w.write_record([i.to_string(), fmt(*x), fmt(*y)])?;
    }
    w.flush()?;
    Ok(())
}

/// `alpha,beta,re,im,stderr_re,stderr_im`
pub fn write_cf_csv(path: &Path, cf: &CharFunctionGrid) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["alpha", "beta", "re", "im", "stderr_re", "stderr_im"])?;
    for p in &cf.points {
        w.write_record([
            fmt(p.alpha),
            fmt(p.beta),
            fmt(p.re),
            fmt(p.im),
            fmt(p.stderr_re),
            fmt(p.stderr_im),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Read back a characteristic-function CSV produced by [`write_cf_csv`].
pub fn read_cf_csv(path: &Path) -> Result<CharFunctionGrid> {
    let mut r = csv::Reader::from_path(path)?;
    let mut points = Vec::new();
    for record in r.deserialize() {
        let row: CfRow = record?;
        points.push(CfPoint {
            alpha: row.alpha,
            beta: row.beta,
            re: row.re,
            im: row.im,
            stderr_re: row.stderr_re,
            stderr_im: row.stderr_im,
        });
    }
    Ok(CharFunctionGrid { points, m: 0 })
}

#[derive(Deserialize)]
struct CfRow {
    alpha: f64,
    beta: f64,
    re: f64,
    im: f64,
    stderr_re: f64,
    stderr_im: f64,
}

/// `x,y,rho`
pub fn write_density_csv(path: &Path, xs: &[f64], ys: &[f64], rho: &[f64]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["x", "y", "rho"])?;
    for (iy, y) in ys.iter().enumerate() {
        for (ix, x) in xs.iter().enumerate() {
            w.write_record([fmt(*x), fmt(*y), fmt(rho[iy * xs.len() + ix])])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `alpha,beta,z_re,z_im`
pub fn write_comparison_csv(path: &Path, report: &ComparisonReport) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["alpha", "beta", "z_re", "z_im"])?;
    for p in &report.points {
        w.write_record([fmt(p.alpha), fmt(p.beta), fmt(p.z_re), fmt(p.z_im)])?;
    }
    w.flush()?;
    Ok(())
}

/// `l,x,y,p,q,defect` (defect is relative to `a(l)^2`)
pub fn write_path_csv(path: &Path, sde_path: &SdePath) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["l", "x", "y", "p", "q", "defect"])?;
    for pt in &sde_path.points {
        w.write_record([
            fmt(pt.l),
            fmt(pt.x),
            fmt(pt.y),
            fmt(pt.p),
            fmt(pt.q),
            fmt(pt.defect),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One analytic-value row: `quantity,m,l,t,kappa,value,method`.
#[derive(Debug, Clone)]
pub struct ValueRow {
    pub quantity: String,
    /// Empty for quantities without a moment order.
    pub m: Option<usize>,
    pub l: f64,
    pub t: f64,
    pub kappa: f64,
    pub value: f64,
    pub method: String,
}

pub fn write_values_csv(path: &Path, rows: &[ValueRow]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["quantity", "m", "l", "t", "kappa", "value", "method"])?;
    for r in rows {
        w.write_record([
            r.quantity.clone(),
            r.m.map(|m| m.to_string()).unwrap_or_default(),
            fmt(r.l),
            fmt(r.t),
            fmt(r.kappa),
            fmt(r.value),
            r.method.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Everything needed to reproduce a run bitwise (modulo the timestamp).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub artifact_version: String,
    pub subcommand: String,
    /// Fully resolved configuration, including the effective seed.
    pub config: ModelConfig,
    pub seed: u64,
    /// Resolved flag values, flattened to strings in sorted order.
    pub flags: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub wall_clock_secs: f64,
    pub unix_timestamp_secs: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str, config: ModelConfig, seed: u64) -> Self {
        RunManifest {
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            config,
            seed,
            flags: BTreeMap::new(),
            outputs: Vec::new(),
            wall_clock_secs: 0.0,
            unix_timestamp_secs: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn flag(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.flags.insert(key.to_string(), value.to_string());
        self
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::Stat;

    #[test]
    fn stats_csv_uses_crlf_and_schema() {
        let dir = std::env::temp_dir().join("stochain_report_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("stats.csv");
        let stats = EnsembleStats {
            m: 100,
            seed: 42,
            stats: vec![Stat {
                name: "x".into(),
                mean: 0.5,
                stderr: 0.01,
            }],
        };
        write_stats_csv(&path, &stats).unwrap();
        let text = std::fs::read(&path).unwrap();
        let text = String::from_utf8(text).unwrap();
        assert!(text.starts_with("statistic,mean,stderr,M,seed\r\n"));
        assert!(text.contains("x,0.5,0.01,100,42\r\n"));
    }

    #[test]
    fn cf_csv_roundtrips() {
        let dir = std::env::temp_dir().join("stochain_report_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cf.csv");
        let cf = CharFunctionGrid {
            points: vec![CfPoint {
                alpha: -1.5,
                beta: 2.0,
                re: 0.25,
                im: -0.125,
                stderr_re: 0.001,
                stderr_im: 0.002,
            }],
            m: 10,
        };
        write_cf_csv(&path, &cf).unwrap();
        let back = read_cf_csv(&path).unwrap();
        assert_eq!(back.points, cf.points);
    }

    #[test]
    fn manifest_roundtrips() {
        let dir = std::env::temp_dir().join("stochain_report_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("manifest.json");
        let mut m = RunManifest::new("simulate", ModelConfig::default(), 7);
        m.flag("which", "hat").flag("trajectories", 100usize);
        m.output(&dir.join("endpoints.csv"));
        m.write(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let back: RunManifest = serde_json::from_str(&text).unwrap();
        assert_eq!(back.subcommand, "simulate");
        assert_eq!(back.flags["which"], "hat");
        assert_eq!(back.seed, 7);
    }
}
