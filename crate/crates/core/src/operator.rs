//! Position-representation application of the sgn-kernel integral operators.
//!
//! The operator with index `(m_inv, n)` has kernel proportional to
//! `(q+q')^n (q-q')^(m_inv-1) sgn(q-q')` (the physical prefactor is a
//! nonzero complex constant and is factored out; it cannot affect domain
//! membership). Expanding the kernel puts the action in the form
//! `Σ_ℓ d_ℓ · q^(N-ℓ) · ∫ q'^ℓ sgn(q-q') φ(q') dq'` with `N = n + m_inv - 1`,
//! and each sgn integral is `2·F_ℓ(q) - M_ℓ` with `F_ℓ` the cumulative
//! integral of `t^ℓ φ(t)` and `M_ℓ` the full moment.

use serde::Serialize;
use thiserror::Error;

use crate::poly::Poly;
use crate::polygauss::{ExtFunc, PolyGauss};
use crate::report::{Check, VerificationReport};
use crate::scalar::{binomial, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum OperatorError {
    #[error("inverse-momentum power m_inv must be >= 1, got {got}")]
    InvalidInverseMomentumPower { got: usize },
}

/// Operator index `(m_inv, n)`: `m_inv >= 1` is the power of the inverse
/// momentum (kernel exponent `m_inv - 1`), `n >= 0` the power of the
/// symmetrized position. The order `N = n + m_inv - 1` counts the moment
/// conditions; `(1, 0)` is order 0 (single moment condition only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorIndex {
    m_inv: usize,
    n: usize,
}

impl OperatorIndex {
    pub fn new(m_inv: usize, n: usize) -> Result<Self, OperatorError> {
        if m_inv < 1 {
            return Err(OperatorError::InvalidInverseMomentumPower { got: m_inv });
        }
        Ok(OperatorIndex { m_inv, n })
    }

    pub fn m_inv(&self) -> usize {
        self.m_inv
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent of `(q - q')` in the kernel.
    pub fn kernel_power(&self) -> usize {
        self.m_inv - 1
    }

    /// Number of vanishing-moment conditions minus one: `N = n + m_inv - 1`.
    pub fn order(&self) -> usize {
        self.n + self.m_inv - 1
    }

    pub fn label(&self) -> String {
        format!("T(-{},{})", self.m_inv, self.n)
    }
}

impl std::fmt::Display for OperatorIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Coefficients `d_ℓ` of the kernel expansion
/// `(q+q')^n (q-q')^(m_inv-1) = Σ_ℓ d_ℓ q^(N-ℓ) q'^ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelExpansion {
    pub index: OperatorIndex,
    pub coefficients: Vec<Scalar>,
}

/// `d_ℓ = Σ_k (-1)^k · C(n, ℓ-k) · C(m_inv-1, k)`.
pub fn kernel_coefficients(idx: OperatorIndex) -> KernelExpansion {
    let n = idx.n() as u64;
    let m = idx.kernel_power() as u64;
    let coefficients = (0..=idx.order() as u64)
        .map(|ell| {
            let mut d = Scalar::zero();
            for k in 0..=m.min(ell) {
                let c = binomial(n, ell - k) * binomial(m, k);
                let term = Scalar::from_rational(num::BigRational::from_integer(
                    num::BigInt::from(c),
                ));
                if k % 2 == 1 {
                    d = &d - &term;
                } else {
                    d = &d + &term;
                }
            }
            d
        })
        .collect();
    KernelExpansion {
        index: idx,
        coefficients,
    }
}

/// Exact image `Σ_ℓ d_ℓ · q^(N-ℓ) · [2·F_ℓ(q) - M_ℓ]` with
/// `F_ℓ = ∫_{-∞}^q t^ℓ φ(t) dt` and `M_ℓ = ∫ t^ℓ φ(t) dt`.
pub fn apply_operator(idx: OperatorIndex, phi: &PolyGauss) -> ExtFunc {
    let expansion = kernel_coefficients(idx);
    let order = idx.order();
    let mut acc = ExtFunc::zero();
    for (ell, d) in expansion.coefficients.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let weighted = phi.mul_xpow(ell);
        let f_ell = weighted.antiderivative_from_minus_inf();
        let m_ell = weighted.moment(0);
        let term = f_ell
            .scale(&Scalar::from_int(2))
            .add_free(&Poly::constant(-&m_ell))
            .mul_xpow(order - ell)
            .scale(d);
        acc = &acc + &term;
    }
    acc
}

/// Domain-membership report for `φ` under the operator: (a) exact moment
/// residuals for `ℓ = 0..=N`, (b) the exact square-integrability certificate
/// of the image, (c) tail classification per `ℓ` against the required
/// `O(|q|^-(N-ℓ+1))` decay. Passes iff all three groups pass.
pub fn domain_membership(idx: OperatorIndex, phi: &PolyGauss) -> VerificationReport {
    let order = idx.order();
    let mut checks = Vec::new();
    for ell in 0..=order {
        checks.push(Check::exact(
            format!("moment ell={ell}"),
            phi.moment(ell),
        ));
    }
    let image = apply_operator(idx, phi);
    let cert = image.square_integrability();
    checks.push(
        Check::stated(
            "image free polynomial vanishes",
            cert.free.is_zero(),
            format!("free part: {}", cert.free),
        ),
    );
    checks.push(
        Check::stated(
            "image erf polynomial vanishes",
            cert.erf_total.is_zero(),
            format!(
                "total erf polynomial: {}; asymptotic shape at +inf: {}, at -inf: {}",
                cert.erf_total, cert.asymptotic_pos, cert.asymptotic_neg
            ),
        ),
    );
    for ell in 0..=order {
        let required = (order - ell + 1) as i64;
        let bound = phi.tail_upper_bound(ell);
        checks.push(Check::stated(
            format!("tail ell={ell} beats |q|^-{required}"),
            bound.beats_power_decay(required),
            format!("tail envelope: {bound}"),
        ));
    }
    VerificationReport::new(format!("{} domain membership", idx.label()), checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basicvec::{basic_vector, BasicVectorSpec};
    use crate::poly::Parity;
    use crate::quad::adaptive_simpson;
    use num::rational::BigRational;

    fn idx(m_inv: usize, n: usize) -> OperatorIndex {
        OperatorIndex::new(m_inv, n).unwrap()
    }

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    fn ints(cs: &[i64]) -> Vec<Scalar> {
        cs.iter().map(|&c| Scalar::from_int(c)).collect()
    }

    #[test]
    fn index_validation_and_order() {
        assert!(OperatorIndex::new(0, 3).is_err());
        assert_eq!(idx(1, 1).order(), 1);
        assert_eq!(idx(3, 3).order(), 5);
        assert_eq!(idx(1, 0).order(), 0);
        assert_eq!(idx(2, 1).kernel_power(), 1);
    }

    #[test]
    fn kernel_expansion_small_cases() {
        // (q + q') -> d = [1, 1]
        assert_eq!(kernel_coefficients(idx(1, 1)).coefficients, ints(&[1, 1]));
        // (q + q')(q - q') = q^2 - q'^2 -> d = [1, 0, -1]
        assert_eq!(
            kernel_coefficients(idx(2, 1)).coefficients,
            ints(&[1, 0, -1])
        );
        // order 0: constant kernel
        assert_eq!(kernel_coefficients(idx(1, 0)).coefficients, ints(&[1]));
    }

    #[test]
    fn kernel_expansion_matches_bivariate_product() {
        // Oracle: multiply (q+q')^n (q-q')^(m_inv-1) as polynomials in q'
        // with Poly-in-q coefficients, then read off each q'^ell slice.
        for m_inv in 1..=4usize {
            for n in 0..=4usize {
                let index = idx(m_inv, n);
                let order = index.order();
                // bivariate[b] = coefficient (a Poly in q) of q'^b
                let mut bivariate: Vec<Poly> = vec![Poly::one()];
                let plus = [Poly::from_ints(&[0, 1]), Poly::one()]; // q + q'
                let minus = [Poly::from_ints(&[0, 1]), -Poly::one()]; // q - q'
                for factor in std::iter::repeat_n(&plus, n)
                    .chain(std::iter::repeat_n(&minus, m_inv - 1))
                {
                    let mut next = vec![Poly::zero(); bivariate.len() + 1];
                    for (b, coeff) in bivariate.iter().enumerate() {
                        next[b] = &next[b] + &(coeff * &factor[0]);
                        next[b + 1] = &next[b + 1] + &(coeff * &factor[1]);
                    }
                    bivariate = next;
                }
                let expansion = kernel_coefficients(index);
                assert_eq!(bivariate.len(), order + 1);
                for (ell, d) in expansion.coefficients.iter().enumerate() {
                    let want = bivariate
                        .get(ell)
                        .map(|p| p.coeff(order - ell))
                        .unwrap_or_else(Scalar::zero);
                    assert_eq!(d, &want, "(m_inv,n)=({m_inv},{n}) ell={ell}");
                }
            }
        }
    }

    #[test]
    fn worked_example_square_integrable_image() {
        // (1 - 2q^2) e^{-q^2} maps under (1,1) to (1 + 4q^2) e^{-q^2},
        // with erf and free parts exactly zero.
        let phi = PolyGauss::term(one(), Poly::from_ints(&[1, 0, -2]));
        let image = apply_operator(idx(1, 1), &phi);
        let want = ExtFunc::from_polygauss(PolyGauss::term(one(), Poly::from_ints(&[1, 0, 4])));
        assert_eq!(image, want);
        assert!(image.is_square_integrable());
    }

    #[test]
    fn gaussian_witness_fails_square_integrability() {
        // e^{-q^2} maps under (1,1) to -e^{-q^2} + sqrt(pi)·q·erf(q):
        // asymptotic shape sqrt(pi)·q, not square integrable.
        let phi = PolyGauss::gaussian(one());
        let image = apply_operator(idx(1, 1), &phi);
        let cert = image.square_integrability();
        assert!(!cert.pass);
        let sqrt_pi_q = Poly::monomial(1, Scalar::pi_quarter_pow(2));
        assert_eq!(cert.asymptotic_pos, sqrt_pi_q);
        assert_eq!(cert.erf_total, sqrt_pi_q);
        assert_eq!(
            image.gauss(),
            &-&PolyGauss::gaussian(one()),
            "Gaussian part"
        );
    }

    #[test]
    fn zero_input_gives_zero_image() {
        assert_eq!(apply_operator(idx(1, 1), &PolyGauss::zero()), ExtFunc::zero());
        assert_eq!(apply_operator(idx(3, 2), &PolyGauss::zero()), ExtFunc::zero());
    }

    #[test]
    fn linearity() {
        let f = PolyGauss::term(one(), Poly::from_ints(&[1, 0, -2]));
        let g = PolyGauss::term(BigRational::new(1.into(), 2.into()), Poly::from_ints(&[0, 3]));
        let a = Scalar::from_ratio(3, 2);
        let b = &Scalar::sqrt_uint(2) * &Scalar::from_int(-1);
        for index in [idx(1, 1), idx(2, 2)] {
            let combined = apply_operator(index, &(&f.scale(&a) + &g.scale(&b)));
            let separate = &apply_operator(index, &f).scale(&a)
                + &apply_operator(index, &g).scale(&b);
            assert_eq!(combined, separate, "{index}");
        }
    }

    #[test]
    fn moment_clean_input_has_pure_gaussian_image() {
        // An order-N basic vector feeds the order-N operator: every erf and
        // free contribution cancels exactly.
        let spec = BasicVectorSpec::new(Parity::Even, vec![0, 1, 2]).unwrap();
        let phi = basic_vector(&spec).unwrap();
        for index in [idx(1, 2), idx(2, 1), idx(3, 0)] {
            assert_eq!(index.order(), 2);
            let image = apply_operator(index, &phi);
            assert!(image.erf_terms().is_empty(), "{index} erf");
            assert!(image.free_part().is_zero(), "{index} free");
            assert!(image.is_square_integrable(), "{index}");
        }
    }

    #[test]
    fn domain_membership_reports() {
        let spec = BasicVectorSpec::new(Parity::Even, vec![0, 1, 2]).unwrap();
        let phi = basic_vector(&spec).unwrap();
        let report = domain_membership(idx(1, 2), &phi);
        assert!(report.pass, "failures: {:?}", report.failures());

        let report = domain_membership(idx(1, 1), &PolyGauss::gaussian(one()));
        assert!(!report.pass);
        let failures = report.failures();
        assert!(failures.contains(&"moment ell=0"));
        assert!(failures.contains(&"image erf polynomial vanishes"));

        // A single Hermite function with a nonzero even moment fails too.
        let psi4 = crate::hermite::hermite_function(4);
        assert!(!psi4.moment(0).is_zero());
        let report = domain_membership(idx(1, 1), &psi4);
        assert!(!report.pass);
        assert!(report.failures().contains(&"moment ell=0"));
    }

    #[test]
    fn numeric_cross_check_of_image() {
        // Quadrature of the defining kernel integral, split at the sgn kink.
        let cases: Vec<(OperatorIndex, PolyGauss)> = vec![
            (idx(1, 1), PolyGauss::term(one(), Poly::from_ints(&[1, 0, -2]))),
            (idx(1, 1), PolyGauss::gaussian(BigRational::new(1.into(), 2.into()))),
            (idx(2, 1), PolyGauss::term(one(), Poly::from_ints(&[0, 1, 1]))),
        ];
        for (index, phi) in cases {
            let image = apply_operator(index, &phi);
            let n = index.n() as i32;
            let mpow = index.kernel_power() as i32;
            for q in [-3.0, -1.0, 0.0, 1.0, 3.0] {
                let integrand = |t: f64| {
                    (q + t).powi(n) * (q - t).powi(mpow) * phi.eval_f64(t)
                };
                let r = 12.0;
                let numeric = adaptive_simpson(&integrand, -r, q, 1e-13)
                    - adaptive_simpson(&integrand, q, r, 1e-13);
                let exact = image.eval_f64(q);
                assert!(
                    (numeric - exact).abs() <= 1e-8 * exact.abs().max(1.0),
                    "{index} at q={q}: quadrature {numeric} vs image {exact}"
                );
            }
        }
    }
}
