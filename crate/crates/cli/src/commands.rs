//! The `basis` and `apply` commands.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use num::rational::BigRational;
use num::One;

use pgops::basicvec::{rational_reduction, verify_moment_conditions};
use pgops::operator::{apply_operator, domain_membership, OperatorIndex};
use pgops::{ExtFunc, Parity, Poly, PolyGauss};

use crate::config::RunConfig;
use crate::funcs::{basis_spec, builtin, parse_basis_colon, realize_basis, NamedInput};
use crate::report::{
    render_scalar, resolve_path, write_extfunc_csv, write_polygauss_csv, CheckRecord,
    CoefficientRecord, Report,
};

pub struct OutputPaths {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

/// Builds a moment-killing vector, reports its exact moment certificates
/// and Hermite coefficients, and dumps samples.
pub fn cmd_basis(
    cfg: &RunConfig,
    parity: Parity,
    order: usize,
    indices: Vec<usize>,
    out: OutputPaths,
) -> Result<bool> {
    let started = Instant::now();
    let spec = basis_spec(parity, order, indices)?;
    let input = realize_basis(spec)?;
    let spec = input.spec.as_ref().expect("basis input carries its spec");

    let mut report = Report::new(cfg, format!("basis vector {}", input.label));

    let red = rational_reduction(spec);
    let cofactors = red.cofactors();
    let mut nonzero = 0usize;
    for (&k, c) in spec.indices.iter().zip(&cofactors) {
        if !c.is_zero() {
            nonzero += 1;
        }
        report.coefficients.push(CoefficientRecord {
            hermite_index: match spec.parity {
                Parity::Even => 2 * k,
                Parity::Odd => 2 * k + 1,
            },
            value: c.canonical_string(),
            value_float: c.to_f64(),
        });
    }
    report.push(CheckRecord {
        name: "nonzero hermite coefficients".into(),
        pass: nonzero > 0,
        residual: None,
        residual_float: None,
        detail: Some(format!("{nonzero} of {} nonzero", cofactors.len())),
    });

    report.absorb(cfg, &verify_moment_conditions(&input.func, order));

    let csv = resolve_path(cfg, out.csv, "basis_samples.csv");
    write_polygauss_csv(&csv, cfg, &input.func)?;
    println!("samples -> {}", csv.display());
    let json = resolve_path(cfg, out.json, "basis_report.json");
    report.finish(&json, started)
}

/// Applies `T(-m,n)` to a built-in function or basis vector; reports the
/// domain certificate, the square-integrability certificate, any known
/// closed-form match, and dumps image samples.
pub fn cmd_apply(
    cfg: &RunConfig,
    m_inv: usize,
    n: usize,
    func: Option<String>,
    basis: Option<String>,
    out: OutputPaths,
) -> Result<bool> {
    let started = Instant::now();
    let idx = OperatorIndex::new(m_inv, n).map_err(|e| anyhow!(e))?;
    let input = match (func, basis) {
        (Some(name), None) => builtin(&name)?,
        (None, Some(colon)) => realize_basis(parse_basis_colon(&colon)?)?,
        _ => bail!("provide exactly one of --func or --basis"),
    };

    let mut report = Report::new(cfg, format!("{} applied to {}", idx.label(), input.label));
    if cfg.show_operator_constant {
        report.operator_constant = Some(operator_constant_display(m_inv, n));
    }

    report.absorb(cfg, &domain_membership(idx, &input.func));

    let image = apply_operator(idx, &input.func);
    let cert = image.square_integrability();
    report.push(CheckRecord {
        name: "image square integrable".into(),
        pass: cert.pass,
        residual: None,
        residual_float: None,
        detail: Some(format!(
            "asymptotics: +inf ~ {}, -inf ~ {}",
            cert.asymptotic_pos, cert.asymptotic_neg
        )),
    });

    if let Some((label, expected)) = known_closed_form(&input, idx) {
        let matches = image == expected;
        report.push(CheckRecord {
            name: format!("image matches {label}"),
            pass: matches,
            residual: matches.then(|| render_scalar(cfg, &pgops::Scalar::zero())),
            residual_float: matches.then_some(0.0),
            detail: Some(if matches {
                "exact match".into()
            } else {
                "image differs from the closed form".into()
            }),
        });
    }

    let csv = resolve_path(cfg, out.csv, "apply_samples.csv");
    write_extfunc_csv(&csv, cfg, &image)?;
    println!("samples -> {}", csv.display());
    let json = resolve_path(cfg, out.json, "apply_report.json");
    report.finish(&json, started)
}

/// Known exact image: `T(-1,1)` maps `(1-2q^2)e^{-q^2}` to
/// `(1+4q^2)e^{-q^2}` on the nose.
fn known_closed_form(input: &NamedInput, idx: OperatorIndex) -> Option<(String, ExtFunc)> {
    if input.label == "paper-example" && idx.m_inv() == 1 && idx.n() == 1 {
        Some((
            "(1+4q^2)exp(-q^2)".into(),
            ExtFunc::from_polygauss(PolyGauss::term(
                BigRational::one(),
                Poly::from_ints(&[1, 0, 4]),
            )),
        ))
    } else {
        None
    }
}

/// Display string for the constant multiplier that the normalized kernel
/// drops: for `T(-m,n)` with `m = k+1`, the factor is
/// `i * (-1)^(k/2) / (2^(n+1) * hbar^m * k!)`.
pub fn operator_constant_display(m_inv: usize, n: usize) -> String {
    let k = (m_inv - 1) as u32;
    let denom: u128 = (1..=k as u128).product::<u128>() * (1u128 << (n + 1));
    format!("i * (-1)^({k}/2) / ({denom} * hbar^{m_inv})")
}
