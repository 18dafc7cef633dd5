//! Run configuration: defaults, environment, TOML config file, and flag
//! overrides, merged in that order (later sources win).

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Environment variable giving the default output directory.
pub const ENV_OUT_DIR: &str = "PGOPS_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// Residuals display as canonical exact strings ("0" on pass).
    Exact,
    /// Residuals display as floats rounded to `float_digits` significant
    /// digits. Display only: certificates are still computed exactly.
    Float,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub precision: Precision,
    /// Significant digits for float-mode display; 15..=17.
    pub float_digits: u32,
    /// Include the operator display constant C in apply reports.
    pub show_operator_constant: bool,
    /// Lower edge of the k-window for asymptotic exponent fits.
    pub fit_k_lo: u64,
    /// Upper edge of the k-window; must be at least 10 * fit_k_lo.
    pub fit_k_hi: u64,
    /// Number of log-spaced samples per fit.
    pub fit_samples: usize,
    /// Largest allowed series truncation K.
    pub series_cap: usize,
    /// Directory receiving report and sample files.
    pub out_dir: PathBuf,
    /// Seed for every randomized suite; fixed seed means byte-identical
    /// reports (modulo timestamp and timing fields).
    pub seed: u64,
    /// Sample grid: q in [-grid_half_width, grid_half_width].
    pub grid_half_width: f64,
    /// Sample grid: number of points, at least 2.
    pub grid_points: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: Precision::Exact,
            float_digits: 17,
            show_operator_constant: false,
            fit_k_lo: 100,
            fit_k_hi: 2000,
            fit_samples: 24,
            series_cap: 3,
            out_dir: PathBuf::from("."),
            seed: 0,
            grid_half_width: 4.0,
            grid_points: 161,
        }
    }
}

/// Config-file shape: every key optional, unknown keys rejected. The key
/// set mirrors `RunConfig` one to one.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    precision: Option<Precision>,
    float_digits: Option<u32>,
    show_operator_constant: Option<bool>,
    fit_k_lo: Option<u64>,
    fit_k_hi: Option<u64>,
    fit_samples: Option<usize>,
    series_cap: Option<usize>,
    out_dir: Option<PathBuf>,
    seed: Option<u64>,
    grid_half_width: Option<f64>,
    grid_points: Option<usize>,
}

/// Flag-level overrides collected by the argument parser.
#[derive(Debug, Default)]
pub struct Overrides {
    pub precision: Option<Precision>,
    pub float_digits: Option<u32>,
    pub show_operator_constant: bool,
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub fit_k_lo: Option<u64>,
    pub fit_k_hi: Option<u64>,
}

impl RunConfig {
    /// Defaults, then `PGOPS_OUT_DIR`, then the config file, then flags.
    pub fn load(file: Option<&Path>, over: &Overrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Ok(dir) = std::env::var(ENV_OUT_DIR) {
            if !dir.is_empty() {
                cfg.out_dir = PathBuf::from(dir);
            }
        }
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            let fc: FileConfig = toml::from_str(&text)
                .with_context(|| format!("parsing config file {}", path.display()))?;
            merge_file(&mut cfg, fc);
        }
        merge_overrides(&mut cfg, over);
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.precision == Precision::Float && !(15..=17).contains(&self.float_digits) {
            bail!(
                "float precision requires 15..=17 significant digits, got {}",
                self.float_digits
            );
        }
        if self.fit_k_lo == 0 {
            bail!("fit window lower edge must be at least 1");
        }
        if self.fit_k_hi < 10 * self.fit_k_lo {
            bail!(
                "fit window must span at least a decade: k_hi {} < 10 * k_lo {}",
                self.fit_k_hi,
                self.fit_k_lo
            );
        }
        if self.fit_samples < 2 {
            bail!("fits need at least 2 samples, got {}", self.fit_samples);
        }
        if self.grid_points < 2 {
            bail!("sample grid needs at least 2 points, got {}", self.grid_points);
        }
        if !(self.grid_half_width > 0.0 && self.grid_half_width.is_finite()) {
            bail!("sample grid half-width must be positive and finite");
        }
        Ok(())
    }

    /// Validates a requested series truncation against the configured cap.
    pub fn check_series_k(&self, k: usize) -> Result<()> {
        if k > self.series_cap {
            bail!(
                "series truncation K = {} exceeds the configured cap {}",
                k,
                self.series_cap
            );
        }
        Ok(())
    }

    /// The q-grid used for CSV sample dumps.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.grid_points;
        let w = self.grid_half_width;
        (0..n)
            .map(|i| -w + 2.0 * w * i as f64 / (n - 1) as f64)
            .collect()
    }
}

fn merge_file(cfg: &mut RunConfig, fc: FileConfig) {
    if let Some(v) = fc.precision {
        cfg.precision = v;
    }
    if let Some(v) = fc.float_digits {
        cfg.float_digits = v;
    }
    if let Some(v) = fc.show_operator_constant {
        cfg.show_operator_constant = v;
    }
    if let Some(v) = fc.fit_k_lo {
        cfg.fit_k_lo = v;
    }
    if let Some(v) = fc.fit_k_hi {
        cfg.fit_k_hi = v;
    }
    if let Some(v) = fc.fit_samples {
        cfg.fit_samples = v;
    }
    if let Some(v) = fc.series_cap {
        cfg.series_cap = v;
    }
    if let Some(v) = fc.out_dir {
        cfg.out_dir = v;
    }
    if let Some(v) = fc.seed {
        cfg.seed = v;
    }
    if let Some(v) = fc.grid_half_width {
        cfg.grid_half_width = v;
    }
    if let Some(v) = fc.grid_points {
        cfg.grid_points = v;
    }
}

fn merge_overrides(cfg: &mut RunConfig, over: &Overrides) {
    if let Some(v) = over.precision {
        cfg.precision = v;
    }
    if let Some(v) = over.float_digits {
        cfg.float_digits = v;
    }
    if over.show_operator_constant {
        cfg.show_operator_constant = true;
    }
    if let Some(ref v) = over.out_dir {
        cfg.out_dir = v.clone();
    }
    if let Some(v) = over.seed {
        cfg.seed = v;
    }
    if let Some(v) = over.fit_k_lo {
        cfg.fit_k_lo = v;
    }
    if let Some(v) = over.fit_k_hi {
        cfg.fit_k_hi = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn float_digit_bounds() {
        let mut cfg = RunConfig {
            precision: Precision::Float,
            float_digits: 14,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
        cfg.float_digits = 15;
        cfg.validate().unwrap();
        cfg.float_digits = 17;
        cfg.validate().unwrap();
        cfg.float_digits = 18;
        assert!(cfg.validate().is_err());
        // Exact mode ignores the digit count entirely.
        cfg.precision = Precision::Exact;
        cfg.validate().unwrap();
    }

    #[test]
    fn fit_window_must_span_decade() {
        let cfg = RunConfig {
            fit_k_lo: 100,
            fit_k_hi: 500,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn series_cap_enforced() {
        let cfg = RunConfig::default();
        cfg.check_series_k(3).unwrap();
        assert!(cfg.check_series_k(4).is_err());
    }

    #[test]
    fn grid_is_symmetric() {
        let cfg = RunConfig {
            grid_half_width: 2.0,
            grid_points: 5,
            ..RunConfig::default()
        };
        let g = cfg.grid();
        assert_eq!(g, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn file_merge_keeps_unset_keys() {
        let fc: FileConfig = toml::from_str("seed = 9\nprecision = \"float\"").unwrap();
        let mut cfg = RunConfig::default();
        cfg.out_dir = PathBuf::from("/tmp/somewhere");
        merge_file(&mut cfg, fc);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.precision, Precision::Float);
        assert_eq!(cfg.out_dir, PathBuf::from("/tmp/somewhere"));
    }

    #[test]
    fn unknown_config_keys_rejected() {
        assert!(toml::from_str::<FileConfig>("sedd = 9").is_err());
    }
}
