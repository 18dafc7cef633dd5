//! Odd-power expansion of the inverse harmonic-oscillator Hamiltonian.
//!
//! On a suitable joint domain, `(p^2/(2mu) + mu omega^2 q^2 / 2)^(-1)`
//! expands as `-Σ_k (-1)^k mu^(2k+1) omega^(2k) / (2k+1) · T_k` where `T_k`
//! is the sgn-kernel operator with index `(2k+1, 2k+1)` (order `4k+1`).
//! This module evaluates partial sums of that expansion on explicit
//! polynomial-Gaussian inputs, guarding the domain precondition, and
//! verifies the nesting of operator domains by order.

use num::rational::BigRational;
use num::traits::Zero;

use thiserror::Error;

use crate::operator::{apply_operator, domain_membership, OperatorIndex};
use crate::polygauss::{ExtFunc, PolyGauss};
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("input rejected by {}: failing checks: [{}]", .report.subject, .report.failures().join(", "))]
    DomainViolation { report: VerificationReport },
    #[error("nesting orders must satisfy low <= high, got low={low} high={high}")]
    InvalidOrderRange { low: usize, high: usize },
    #[error("mass-coupling parameter must be positive, got {got}")]
    NonPositiveCoupling { got: BigRational },
    #[error("frequency parameter must be nonnegative, got {got}")]
    NegativeFrequency { got: BigRational },
}

/// Truncation and physical parameters for the inverse-Hamiltonian series:
/// terms `k = 0..=k_max`, mass-coupling `mu > 0`, frequency `omega >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HOSeriesSpec {
    k_max: usize,
    mu: BigRational,
    omega: BigRational,
}

impl HOSeriesSpec {
    pub fn new(k_max: usize, mu: BigRational, omega: BigRational) -> Result<Self, SeriesError> {
        if mu <= BigRational::zero() {
            return Err(SeriesError::NonPositiveCoupling { got: mu });
        }
        if omega < BigRational::zero() {
            return Err(SeriesError::NegativeFrequency { got: omega });
        }
        Ok(HOSeriesSpec { k_max, mu, omega })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn mu(&self) -> &BigRational {
        &self.mu
    }

    pub fn omega(&self) -> &BigRational {
        &self.omega
    }

    /// Operator index of the `k`-th series term: `(2k+1, 2k+1)`, order `4k+1`.
    pub fn term_index(k: usize) -> OperatorIndex {
        OperatorIndex::new(2 * k + 1, 2 * k + 1).expect("odd index is always valid")
    }

    /// Scalar weight of the `k`-th term:
    /// `(-1)^(k+1) mu^(2k+1) omega^(2k) / (2k+1)`.
    pub fn term_coefficient(&self, k: usize) -> Scalar {
        let magnitude = num::pow::pow(self.mu.clone(), 2 * k + 1)
            * num::pow::pow(self.omega.clone(), 2 * k)
            / BigRational::from_integer((2 * k as i64 + 1).into());
        let signed = if k % 2 == 0 { -magnitude } else { magnitude };
        Scalar::from_rational(signed)
    }

    /// Highest-order operator index in the truncated sum.
    pub fn highest_index(&self) -> OperatorIndex {
        Self::term_index(self.k_max)
    }
}

/// Partial sum `Σ_{k<=k_max} c_k · T_(2k+1,2k+1) φ` of the inverse-Hamiltonian
/// expansion. Precondition: `φ` lies in the domain of the highest-order term
/// (the strictest one; nesting then covers the rest). A violation returns the
/// failing membership report instead of an image.
pub fn ho_partial_sum_apply(
    spec: &HOSeriesSpec,
    phi: &PolyGauss,
) -> Result<ExtFunc, SeriesError> {
    let gate = domain_membership(spec.highest_index(), phi);
    if !gate.pass {
        return Err(SeriesError::DomainViolation { report: gate });
    }
    let mut acc = ExtFunc::zero();
    for k in 0..=spec.k_max() {
        let c = spec.term_coefficient(k);
        if c.is_zero() {
            continue;
        }
        let image = apply_operator(HOSeriesSpec::term_index(k), phi);
        acc = &acc + &image.scale(&c);
    }
    Ok(acc)
}

/// Verifies, on the witness `φ`, that membership in the order-`n_high` domain
/// implies membership in the domain of every operator of order `n_low`:
/// first the premise (moments of `φ` through `n_high` vanish), then the full
/// membership report for each index `(m_inv, n)` with
/// `m_inv + n - 1 = n_low`.
pub fn domain_nesting_check(
    n_high: usize,
    n_low: usize,
    phi: &PolyGauss,
) -> Result<VerificationReport, SeriesError> {
    if n_low > n_high {
        return Err(SeriesError::InvalidOrderRange {
            low: n_low,
            high: n_high,
        });
    }
    let mut checks = Vec::new();
    for ell in 0..=n_high {
        checks.push(Check::exact(
            format!("premise moment ell={ell}"),
            phi.moment(ell),
        ));
    }
    for m_inv in 1..=n_low + 1 {
        let n = n_low + 1 - m_inv;
        let idx = OperatorIndex::new(m_inv, n).expect("m_inv >= 1 by construction");
        let member = domain_membership(idx, phi);
        let detail = if member.pass {
            "all membership checks pass".to_string()
        } else {
            format!("failing checks: [{}]", member.failures().join(", "))
        };
        checks.push(Check::stated(
            format!("member of {} domain", idx.label()),
            member.pass,
            detail,
        ));
    }
    Ok(VerificationReport::new(
        format!("domain nesting: order {n_high} into order {n_low}"),
        checks,
    ))
}
