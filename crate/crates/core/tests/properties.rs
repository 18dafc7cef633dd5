//! Property tests over randomized polynomial-Gaussian inputs: structural
//! identities are asserted exactly, numeric cross-checks against adaptive
//! quadrature carry pinned tolerances.

use num::rational::BigRational;
use num::ToPrimitive;
use proptest::prelude::*;

use pgops::operator::{apply_operator, OperatorIndex};
use pgops::quad::integrate_gaussian_decay;
use pgops::{ExtFunc, Parity, Poly, PolyGauss, Scalar};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn width() -> impl Strategy<Value = BigRational> {
    prop_oneof![
        Just(ratio(1, 2)),
        Just(ratio(1, 1)),
        Just(ratio(3, 2)),
        Just(ratio(2, 1)),
    ]
}

fn int_coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 1..=max_len)
}

fn single_term() -> impl Strategy<Value = PolyGauss> {
    (width(), int_coeffs(13))
        .prop_map(|(alpha, cs)| PolyGauss::term(alpha, Poly::from_ints(&cs)))
}

fn two_terms() -> impl Strategy<Value = PolyGauss> {
    (single_term(), single_term()).prop_map(|(f, g)| &f + &g)
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4, any::<bool>()).prop_map(|(p, q, radical)| {
        let base = Scalar::from_ratio(p, q);
        if radical {
            &base * &Scalar::sqrt_uint(2)
        } else {
            base
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Differentiating the cumulative integral returns the integrand,
    /// exactly, including the erf bookkeeping.
    #[test]
    fn antiderivative_roundtrip(f in two_terms()) {
        let ext = f.antiderivative_from_minus_inf();
        prop_assert_eq!(ext.derivative(), ExtFunc::from_polygauss(f));
    }

    /// Exact moments agree with adaptive quadrature to 1e-10 relative to
    /// the integrand scale (high-degree integrands reach ~1e10, so the
    /// quadrature tolerance must scale with them to stay reachable in f64).
    #[test]
    fn moment_matches_quadrature(f in single_term(), ell in 0usize..=6) {
        let exact = f.moment(ell).to_f64();
        let alpha = f.terms()[0].0.to_f64().unwrap();
        let integrand = |t: f64| t.powi(ell as i32) * f.eval_f64(t);
        let grid_max = (0..=104)
            .map(|i| integrand(-13.0 + 0.25 * i as f64).abs())
            .fold(1.0_f64, f64::max);
        let numeric = integrate_gaussian_decay(&integrand, alpha, 1e-12 * grid_max);
        prop_assert!(
            (exact - numeric).abs() <= 1e-10 * grid_max.max(exact.abs()),
            "moment {} vs quadrature {} (scale {})", exact, numeric, grid_max
        );
    }

    /// A definite-parity function has exactly zero moments of the
    /// opposite parity.
    #[test]
    fn opposite_parity_moments_vanish(
        cs in int_coeffs(7),
        alpha in width(),
        odd in any::<bool>(),
        ell in 0usize..=9,
    ) {
        let mut full = vec![0i64; 2 * cs.len()];
        for (i, &c) in cs.iter().enumerate() {
            full[2 * i + usize::from(odd)] = c;
        }
        let f = PolyGauss::term(alpha, Poly::from_ints(&full));
        if let Some(parity) = f.parity() {
            prop_assert_eq!(parity, if odd { Parity::Odd } else { Parity::Even });
        }
        let opposite = (ell % 2 == 0) == odd;
        if opposite {
            prop_assert!(f.moment(ell).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The operator action is linear over the scalar field, exactly.
    #[test]
    fn operator_linearity(
        f in single_term(),
        g in single_term(),
        a in small_scalar(),
        b in small_scalar(),
        m_inv in 1usize..=3,
        n in 0usize..=2,
    ) {
        let idx = OperatorIndex::new(m_inv, n).unwrap();
        let combined = apply_operator(idx, &(&f.scale(&a) + &g.scale(&b)));
        let separate = &apply_operator(idx, &f).scale(&a) + &apply_operator(idx, &g).scale(&b);
        prop_assert_eq!(combined, separate);
    }

    /// Far from the origin the image agrees with its certified asymptotic
    /// polynomial on each side; inputs smoothed by repeated differentiation
    /// (which kills the low moments) must certify square integrable.
    #[test]
    fn far_field_matches_certificate(
        g in two_terms(),
        m_inv in 1usize..=2,
        n in 0usize..=1,
        smooth in any::<bool>(),
    ) {
        let idx = OperatorIndex::new(m_inv, n).unwrap();
        let order = idx.order();
        let mut phi = g;
        if smooth {
            for _ in 0..=order {
                phi = phi.derivative();
            }
        }
        prop_assume!(!phi.is_zero());
        let image = apply_operator(idx, &phi);
        let cert = image.square_integrability();
        if smooth {
            prop_assert!(cert.pass, "derivative-smoothed input must certify: {:?}",
                image.square_integrability());
        }
        for q in [15.0_f64, 18.0, -15.0, -18.0] {
            let side = if q > 0.0 { &cert.asymptotic_pos } else { &cert.asymptotic_neg };
            let predicted = side.eval_f64(q);
            let actual = image.eval_f64(q);
            prop_assert!(
                (actual - predicted).abs() <= 1e-8 * predicted.abs().max(1.0),
                "at q={}: image {} vs asymptotic {}", q, actual, predicted
            );
        }
    }
}
