//! Moments of Hermite functions: the A-coefficient family
//! `A_even(j,k) = ∫ q^{2j} ψ_{2k}(q) dq` and
//! `A_odd(j,k) = ∫ q^{2j+1} ψ_{2k+1}(q) dq`, computed by exact recurrences,
//! their factorization through the f-polynomials, and empirical asymptotic
//! exponent fits `k^{j ∓ 1/4}`.

use num::rational::BigRational;
use num::{BigInt, BigUint};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::poly::Poly;
use crate::scalar::{factorial, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum MomentError {
    #[error("sampler returned non-positive value {value} at k = {k}; cannot fit a log-log slope")]
    NonPositiveSample { k: u64, value: f64 },
    #[error("fit range [{lo}, {hi}] must span at least one decade (hi >= 10*lo) with lo >= 1")]
    RangeTooNarrow { lo: u64, hi: u64 },
}

/// Exact `∫ q^{2j} ψ_{2k}(q) dq`, by the three-term recurrence in `j`
/// (the `k-1` leg carries the factor `√(2k(2k-1))/2`, which vanishes at
/// `k = 0`, so that leg simply drops).
pub fn moment_a_even(j: usize, k: usize) -> Scalar {
    // row 0 over k-range [0, k + j], then j recurrence steps
    let mut row: Vec<Scalar> = (0..=k + j).map(column_constant_even).collect();
    for _ in 0..j {
        row = (0..row.len() - 1).map(|i| even_step(&row, i)).collect();
    }
    row[k].clone()
}

/// Exact `∫ q^{2j+1} ψ_{2k+1}(q) dq`, reduced to the even family:
/// `A_odd(j,k) = √(k+1)·A_even(j,k+1) + √((2k+1)/2)·A_even(j,k)`.
pub fn moment_a_odd(j: usize, k: usize) -> Scalar {
    let mut row: Vec<Scalar> = (0..=k + j + 1).map(column_constant_even).collect();
    for _ in 0..j {
        row = (0..row.len() - 1).map(|i| even_step(&row, i)).collect();
    }
    odd_from_even(k, &row[k + 1], &row[k])
}

fn even_step(prev: &[Scalar], k: usize) -> Scalar {
    let k64 = k as u64;
    // √((2k+2)(2k+1))/2 · A[k+1]  +  (2k + 1/2) · A[k]  +  √(2k(2k-1))/2 · A[k-1]
    let up = Scalar::sqrt_uint((2 * k64 + 2) * (2 * k64 + 1))
        .scale_rational(&BigRational::new(1.into(), 2.into()));
    let mid = Scalar::from_rational(BigRational::new((4 * k64 as i64 + 1).into(), 2.into()));
    let mut acc = &(&up * &prev[k + 1]) + &(&mid * &prev[k]);
    if k > 0 {
        let down = Scalar::sqrt_uint(2 * k64 * (2 * k64 - 1))
            .scale_rational(&BigRational::new(1.into(), 2.into()));
        acc = &acc + &(&down * &prev[k - 1]);
    }
    acc
}

fn odd_from_even(k: usize, even_k_plus_1: &Scalar, even_k: &Scalar) -> Scalar {
    let k64 = k as u64;
    let up = Scalar::sqrt_uint(k64 + 1);
    // √((2k+1)/2) = √(4k+2)/2
    let flat = Scalar::sqrt_uint(4 * k64 + 2)
        .scale_rational(&BigRational::new(1.into(), 2.into()));
    &(&up * even_k_plus_1) + &(&flat * even_k)
}

/// Per-column radical constant of the even family:
/// `A_even(j,k) = f_j(k) · √2·π^{1/4}·√((2k)!)/(2^k·k!)`, and this is the
/// radical factor (also the `j = 0` value, since `f_0 = 1`).
pub fn column_constant_even(k: usize) -> Scalar {
    let k = k as u64;
    let denom = BigInt::from(BigUint::from(2u32).pow(k as u32) * factorial(k));
    &(&(&Scalar::sqrt_uint(2) * &Scalar::pi_quarter_pow(1)) * &Scalar::sqrt_factorial(2 * k))
        * &Scalar::from_rational(BigRational::new(1.into(), denom))
}

/// Per-column radical constant of the odd family:
/// `A_odd(j,k) = (f_j(k+1) + f_j(k)) · π^{1/4}·√((2k+1)!)/(2^k·k!)`.
pub fn column_constant_odd(k: usize) -> Scalar {
    let k = k as u64;
    let denom = BigInt::from(BigUint::from(2u32).pow(k as u32) * factorial(k));
    &(&Scalar::pi_quarter_pow(1) * &Scalar::sqrt_factorial(2 * k + 1))
        * &Scalar::from_rational(BigRational::new(1.into(), denom))
}

/// The polynomial `f_j` (in the Hermite index `k`) that carries the whole
/// `j`-dependence of the even moment family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPolynomial {
    pub j: usize,
    pub poly: Poly,
}

impl FPolynomial {
    /// Exact integer value `f_j(k)`.
    pub fn eval_int(&self, k: i64) -> BigInt {
        self.poly
            .eval(&Scalar::from_int(k))
            .as_rational()
            .expect("f-polynomial values are rational")
            .to_integer()
    }

    pub fn eval_f64(&self, k: f64) -> f64 {
        self.poly.eval_f64(k)
    }
}

/// `f_j` by the recurrence
/// `f_j(k) = ((2k+1)/2)·f_{j-1}(k+1) + (2k+1/2)·f_{j-1}(k) + k·f_{j-1}(k-1)`,
/// `f_0 = 1`. Degree `j`, integer coefficients, leading coefficient `4^j`.
pub fn f_poly(j: usize) -> FPolynomial {
    let one = BigRational::from_integer(1.into());
    let mut f = Poly::one();
    for _ in 0..j {
        let up = f.shift_var(&one); // f_{j-1}(k+1)
        let down = f.shift_var(&-&one); // f_{j-1}(k-1)
        // (2k+1)/2 = k + 1/2,  2k + 1/2,  k
        let c_up = Poly::from_coeffs(vec![Scalar::from_ratio(1, 2), Scalar::one()]);
        let c_mid = Poly::from_coeffs(vec![Scalar::from_ratio(1, 2), Scalar::from_int(2)]);
        let c_down = Poly::from_ints(&[0, 1]);
        f = &(&(&c_up * &up) + &(&c_mid * &f)) + &(&c_down * &down);
    }
    let fp = FPolynomial { j, poly: f };
    debug_assert_eq!(fp.poly.degree(), j as isize);
    debug_assert!(fp.poly.has_integer_coeffs());
    fp
}

/// `f_j(k+1) + f_j(k)`, the polynomial carrying the odd family.
pub fn f_sum_poly(j: usize) -> FPolynomial {
    let f = f_poly(j);
    let one = BigRational::from_integer(1.into());
    FPolynomial {
        j,
        poly: &f.poly.shift_var(&one) + &f.poly,
    }
}

/// Float evaluation of `A_even(j,k)` through the factorized closed form,
/// with the factorial radical in the log domain (`k` up to thousands).
pub fn a_even_f64(j: usize, k: u64) -> f64 {
    let f = f_poly(j).eval_f64(k as f64);
    let ln_radical = 0.5 * ln_factorial(2 * k) - (k as f64) * std::f64::consts::LN_2
        - ln_factorial(k);
    f * std::f64::consts::SQRT_2
        * std::f64::consts::PI.powf(0.25)
        * ln_radical.exp()
}

/// Float evaluation of `A_odd(j,k)` through the factorized closed form.
pub fn a_odd_f64(j: usize, k: u64) -> f64 {
    let f = f_sum_poly(j).eval_f64(k as f64);
    let ln_radical = 0.5 * ln_factorial(2 * k + 1) - (k as f64) * std::f64::consts::LN_2
        - ln_factorial(k);
    f * std::f64::consts::PI.powf(0.25) * ln_radical.exp()
}

fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Least-squares slope of `ln(sampler(k))` against `ln k` over `samples`
/// log-spaced points in `[k_lo, k_hi]`; the range must span a decade.
pub fn asymptotic_exponent<F: Fn(u64) -> f64>(
    sampler: F,
    k_lo: u64,
    k_hi: u64,
    samples: usize,
) -> Result<f64, MomentError> {
    if k_lo < 1 || k_hi < 10 * k_lo {
        return Err(MomentError::RangeTooNarrow { lo: k_lo, hi: k_hi });
    }
    let n = samples.max(2);
    let (lo, hi) = ((k_lo as f64).ln(), (k_hi as f64).ln());
    let mut points: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut last_k = 0u64;
    for i in 0..n {
        let k = ((lo + (hi - lo) * i as f64 / (n - 1) as f64).exp().round() as u64)
            .clamp(k_lo, k_hi);
        if k == last_k {
            continue;
        }
        last_k = k;
        let v = sampler(k);
        if !(v > 0.0) || !v.is_finite() {
            return Err(MomentError::NonPositiveSample { k, value: v });
        }
        points.push(((k as f64).ln(), v.ln()));
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
