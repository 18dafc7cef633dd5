//! Report assembly and serialization: one JSON document per run, plus CSV
//! sample grids. Field order is fixed by struct declaration order, so a
//! fixed config and seed reproduce the report byte for byte except for the
//! `generated_unix_secs` and `timing_ms` fields.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;

use pgops::{ExtFunc, PolyGauss, Scalar, VerificationReport};

use crate::config::{Precision, RunConfig};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One verification check in a report.
#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    /// Residual rendered per the configured precision: canonical exact
    /// string in exact mode (always "0" for a passing exact check), float
    /// rounded to the configured digits in float mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_float: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One log-log slope fit with its window.
#[derive(Debug, Serialize)]
pub struct FittedExponent {
    pub name: String,
    pub slope: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub window: [u64; 2],
    pub samples: usize,
    pub pass: bool,
}

/// Basis-vector coefficient in the Hermite-function expansion.
#[derive(Debug, Serialize)]
pub struct CoefficientRecord {
    /// Absolute Hermite index (2k for even vectors, 2k+1 for odd).
    pub hermite_index: usize,
    pub value: String,
    pub value_float: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub artifact_version: &'static str,
    pub generated_unix_secs: u64,
    pub timing_ms: u64,
    pub seed: u64,
    pub precision: Precision,
    pub subject: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator_constant: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub coefficients: Vec<CoefficientRecord>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fitted_exponents: Vec<FittedExponent>,
}

impl Report {
    pub fn new(cfg: &RunConfig, subject: impl Into<String>) -> Self {
        Report {
            artifact_version: ARTIFACT_VERSION,
            generated_unix_secs: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            timing_ms: 0,
            seed: cfg.seed,
            precision: cfg.precision,
            subject: subject.into(),
            pass: true,
            operator_constant: None,
            coefficients: Vec::new(),
            checks: Vec::new(),
            fitted_exponents: Vec::new(),
        }
    }

    /// Appends the checks of a core verification report.
    pub fn absorb(&mut self, cfg: &RunConfig, core: &VerificationReport) {
        for c in &core.checks {
            self.push(CheckRecord {
                name: format!("{}: {}", core.subject, c.name),
                pass: c.pass,
                residual: c.residual.as_ref().map(|s| render_scalar(cfg, s)),
                residual_float: c
                    .residual_float
                    .or_else(|| c.residual.as_ref().map(Scalar::to_f64)),
                detail: c.detail.clone(),
            });
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn push_fit(&mut self, fit: FittedExponent) {
        self.pass &= fit.pass;
        self.fitted_exponents.push(fit);
    }

    /// Serializes, writes to `path`, and prints a per-check summary.
    pub fn finish(mut self, path: &Path, started: std::time::Instant) -> Result<bool> {
        self.timing_ms = started.elapsed().as_millis() as u64;
        let json = serde_json::to_string_pretty(&self).context("serializing report")?;
        write_creating_dir(path, &(json + "\n"))?;
        for c in &self.checks {
            println!(
                "  [{}] {}{}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                match &c.residual {
                    Some(r) if !c.pass => format!(" (residual {r})"),
                    _ => String::new(),
                }
            );
        }
        for f in &self.fitted_exponents {
            println!(
                "  [{}] {}: slope {:.4}, expected {} +/- {}, window [{}, {}]",
                if f.pass { "pass" } else { "FAIL" },
                f.name,
                f.slope,
                f.expected,
                f.tolerance,
                f.window[0],
                f.window[1]
            );
        }
        println!(
            "{}: {} ({} checks, {} fits) -> {}",
            self.subject,
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.fitted_exponents.len(),
            path.display()
        );
        Ok(self.pass)
    }
}

/// Renders a scalar residual per the configured precision.
pub fn render_scalar(cfg: &RunConfig, s: &Scalar) -> String {
    match cfg.precision {
        Precision::Exact => s.canonical_string(),
        Precision::Float => format_digits(s.to_f64(), cfg.float_digits),
    }
}

/// Shortest-exponent scientific rendering with `digits` significant digits.
pub fn format_digits(v: f64, digits: u32) -> String {
    format!("{:.*e}", digits.saturating_sub(1) as usize, v)
}

/// CSV dump of a polynomial-Gaussian function: columns `q,value`.
pub fn write_polygauss_csv(path: &Path, cfg: &RunConfig, f: &PolyGauss) -> Result<()> {
    let mut out = String::from("q,value\n");
    for q in cfg.grid() {
        out.push_str(&format!("{q},{}\n", f.eval_f64(q)));
    }
    write_creating_dir(path, &out)
}

/// CSV dump of an operator image: columns
/// `q,value,gauss_part,erf_part,free_part`.
pub fn write_extfunc_csv(path: &Path, cfg: &RunConfig, f: &ExtFunc) -> Result<()> {
    let mut out = String::from("q,value,gauss_part,erf_part,free_part\n");
    for q in cfg.grid() {
        let (g, e, u) = f.eval_parts_f64(q);
        out.push_str(&format!("{q},{},{g},{e},{u}\n", g + e + u));
    }
    write_creating_dir(path, &out)
}

/// Resolves an optional explicit path against the configured output
/// directory and a default file name.
pub fn resolve_path(cfg: &RunConfig, explicit: Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit.unwrap_or_else(|| cfg.out_dir.join(default_name))
}

fn write_creating_dir(path: &Path, content: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)
                .with_context(|| format!("creating output directory {}", dir.display()))?;
        }
    }
    fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}
