//! `pgops`: build moment-killing vectors, apply signum-kernel operators,
//! certify square integrability, fit asymptotic exponents, and emit JSON
//! reports plus CSV sample grids.
//!
//! Exit codes: 0 when the produced report passes, 1 when it fails, 2 on
//! usage or configuration errors.

mod commands;
mod config;
mod funcs;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::{Overrides, Precision, RunConfig};
use suites::SuiteName;

#[derive(Parser)]
#[command(
    name = "pgops",
    version,
    about = "Moment-killing vectors, signum-kernel operator images, and exact certificates"
)]
struct Cli {
    /// TOML config file; keys mirror the run configuration.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory for reports and samples (default: $PGOPS_OUT_DIR or .)
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    /// Seed for all randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Residual display: exact canonical strings or rounded floats.
    #[arg(long, global = true, value_enum)]
    precision: Option<Precision>,

    /// Significant digits for float-mode display (15..=17).
    #[arg(long, global = true)]
    digits: Option<u32>,

    /// Include the operator display constant in apply reports.
    #[arg(long, global = true)]
    show_constant: bool,

    /// Lower edge of the k-window for asymptotic fits.
    #[arg(long, global = true)]
    fit_lo: Option<u64>,

    /// Upper edge of the k-window for asymptotic fits.
    #[arg(long, global = true)]
    fit_hi: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a moment-killing basis vector and certify its moments.
    Basis {
        /// "even" or "odd".
        #[arg(long)]
        parity: String,
        /// Order N: moments 0..=N vanish; needs N+1 indices.
        #[arg(long)]
        order: usize,
        /// Comma-separated distinct parity indices, e.g. "0,1,2".
        #[arg(long)]
        indices: String,
        /// JSON report path (default: <out-dir>/basis_report.json).
        #[arg(long)]
        json: Option<PathBuf>,
        /// CSV sample path (default: <out-dir>/basis_samples.csv).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Apply T(-m,n) to a built-in function or a basis vector.
    Apply {
        /// Inverse-momentum power m >= 1.
        #[arg(long)]
        m: usize,
        /// Position power n >= 0.
        #[arg(long)]
        n: usize,
        /// Built-in input: gaussian | paper-example | hermite:n | basis:parity:N:indices.
        #[arg(long)]
        func: Option<String>,
        /// Basis-vector input in colon form, e.g. "even:2:0,1,2".
        #[arg(long)]
        basis: Option<String>,
        /// JSON report path (default: <out-dir>/apply_report.json).
        #[arg(long)]
        json: Option<PathBuf>,
        /// CSV sample path (default: <out-dir>/apply_samples.csv).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a named verification suite; exit code 0 iff it passes.
    Suite {
        /// all | moments | basis | operator | completeness | series.
        #[arg(value_enum)]
        name: SuiteName,
        /// Series truncation K (series suite; must not exceed the cap).
        #[arg(long)]
        max_k: Option<usize>,
        /// JSON report path (default: <out-dir>/suite_<name>_report.json).
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let over = Overrides {
        precision: cli.precision,
        float_digits: cli.digits,
        show_operator_constant: cli.show_constant,
        out_dir: cli.out_dir,
        seed: cli.seed,
        fit_k_lo: cli.fit_lo,
        fit_k_hi: cli.fit_hi,
    };
    let cfg = RunConfig::load(cli.config.as_deref(), &over)?;

    match cli.command {
        Command::Basis {
            parity,
            order,
            indices,
            json,
            csv,
        } => commands::cmd_basis(
            &cfg,
            funcs::parse_parity(&parity)?,
            order,
            funcs::parse_indices(&indices)?,
            commands::OutputPaths { json, csv },
        ),
        Command::Apply {
            m,
            n,
            func,
            basis,
            json,
            csv,
        } => commands::cmd_apply(&cfg, m, n, func, basis, commands::OutputPaths { json, csv }),
        Command::Suite { name, max_k, json } => {
            let started = Instant::now();
            let report = suites::run_suite(&cfg, name, max_k)?;
            let path = report::resolve_path(
                &cfg,
                json,
                &format!("suite_{}_report.json", name.as_str()),
            );
            report.finish(&path, started)
        }
    }
}
