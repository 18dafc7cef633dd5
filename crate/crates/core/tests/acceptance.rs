//! Acceptance gate: one test per criterion, each printing a single
//! `ACCEPTANCE NN <name>: PASS|FAIL` line (visible with `--nocapture`).
//! Tolerances and runtime budgets are pinned as constants next to each
//! criterion body. Random index sets are seeded and shared between the
//! moment-certificate, domain-certificate, and nesting criteria.

use std::collections::HashSet;
use std::time::Instant;

use num::rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pgops::basicvec::{basic_vector, moment_a, parity_hermite_function, BasicVectorSpec};
use pgops::completeness::{
    annihilator_kernel_test, coefficient_ratio_n1, implied_l2_partial_sum,
    integer_roots_in_window, k0_root_polynomial, phi_k0_determinant_f64, random_instance,
};
use pgops::linalg::scalar_det;
use pgops::moments::{a_even_f64, a_odd_f64, asymptotic_exponent, f_poly, f_sum_poly};
use pgops::operator::{apply_operator, domain_membership, OperatorIndex};
use pgops::series::{domain_nesting_check, ho_partial_sum_apply, HOSeriesSpec};
use pgops::{Parity, Poly, PolyGauss, Scalar};

/// Slope tolerance for all log-log exponent fits over k in [100, 2000].
const EXPONENT_TOL: f64 = 0.02;
/// Slope tolerance for the bordered-determinant growth fits.
const GROWTH_TOL: f64 = 0.05;
/// Fit window and sample count shared by every exponent fit.
const FIT_LO: u64 = 100;
const FIT_HI: u64 = 2000;
const FIT_SAMPLES: usize = 24;
/// Index ceiling for the sampled basis specs.
const MAX_INDEX: usize = 12;
/// Sampled index sets per (parity, order).
const SETS_PER_CASE: usize = 10;

fn conclude(num: u32, name: &str, started: Instant, limit_secs: Option<f64>, failures: Vec<String>) {
    let secs = started.elapsed().as_secs_f64();
    let mut fails = failures;
    if let Some(lim) = limit_secs {
        if secs > lim {
            fails.push(format!("runtime {secs:.1}s exceeds the {lim}s budget"));
        }
    }
    let pass = fails.is_empty();
    println!(
        "ACCEPTANCE {num:02} {name}: {} ({secs:.2}s)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {num:02} ({name}) failures:\n{}", fails.join("\n"));
}

/// Deterministic draw of `SETS_PER_CASE` pairwise-distinct index sets of
/// size `order + 1` from `0..=MAX_INDEX`, per (parity, order).
fn sampled_index_sets(parity: Parity, order: usize) -> Vec<Vec<usize>> {
    let tag = match parity {
        Parity::Even => 0u64,
        Parity::Odd => 1u64,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + 100 * order as u64 + tag);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut sets = Vec::new();
    while sets.len() < SETS_PER_CASE {
        let mut pool: Vec<usize> = (0..=MAX_INDEX).collect();
        pool.shuffle(&mut rng);
        let mut indices: Vec<usize> = pool.into_iter().take(order + 1).collect();
        indices.sort_unstable();
        if seen.insert(indices.clone()) {
            sets.push(indices);
        }
    }
    sets
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

/// All operator indices (m_inv, n) of a given order.
fn indices_of_order(order: usize) -> Vec<OperatorIndex> {
    (1..=order + 1)
        .map(|m_inv| OperatorIndex::new(m_inv, order + 1 - m_inv).unwrap())
        .collect()
}

#[test]
fn criterion_01_worked_example_exact() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let phi = PolyGauss::term(one(), Poly::from_ints(&[1, 0, -2]));
    let image = apply_operator(OperatorIndex::new(1, 1).unwrap(), &phi);
    let want = PolyGauss::term(one(), Poly::from_ints(&[1, 0, 4]));
    if image.gauss() != &want {
        fails.push(format!("gaussian part is {} not {want}", image.gauss()));
    }
    if !image.erf_terms().is_empty() {
        fails.push("erf part not identically zero".into());
    }
    if !image.free_part().is_zero() {
        fails.push(format!("free part is {} not zero", image.free_part()));
    }
    conclude(1, "worked example image", started, Some(1.0), fails);
}

#[test]
fn criterion_02_gaussian_witness_asymptotics() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let image = apply_operator(OperatorIndex::new(1, 1).unwrap(), &PolyGauss::gaussian(one()));
    let cert = image.square_integrability();
    let sqrt_pi_q = Poly::monomial(1, Scalar::pi_quarter_pow(2));
    if cert.pass {
        fails.push("witness image wrongly certified square integrable".into());
    }
    if cert.asymptotic_pos != sqrt_pi_q {
        fails.push(format!(
            "asymptotic polynomial at +inf is {} not sqrt(pi)*q",
            cert.asymptotic_pos
        ));
    }
    if cert.asymptotic_pos.degree() != 1 {
        fails.push("non-decaying polynomial not of degree 1".into());
    }
    if cert.asymptotic_pos.leading_coeff() != Some(&Scalar::pi_quarter_pow(2)) {
        fails.push("leading coefficient is not exactly sqrt(pi)".into());
    }
    conclude(2, "non-domain witness", started, Some(1.0), fails);
}

#[test]
fn criterion_03_polynomial_table_regression() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let f_tables: [&[i64]; 6] = [
        &[1],
        &[1, 4],
        &[3, 8, 16],
        &[15, 68, 48, 64],
        &[105, 368, 800, 256, 256],
        &[945, 4596, 4960, 7040, 1280, 1024],
    ];
    let f_sum_tables: [&[i64]; 6] = [
        &[2],
        &[6, 8],
        &[30, 48, 32],
        &[210, 424, 288, 128],
        &[1890, 4128, 3904, 1536, 512],
        &[20790, 50472, 48960, 29440, 7680, 2048],
    ];
    for (j, table) in f_tables.iter().enumerate() {
        if f_poly(j).poly != Poly::from_ints(table) {
            fails.push(format!("f_poly({j}) mismatch: got {}", f_poly(j).poly));
        }
    }
    for (j, table) in f_sum_tables.iter().enumerate() {
        if f_sum_poly(j).poly != Poly::from_ints(table) {
            fails.push(format!("f_sum_poly({j}) mismatch: got {}", f_sum_poly(j).poly));
        }
    }
    conclude(3, "polynomial tables", started, Some(1.0), fails);
}

#[test]
fn criterion_04_recurrence_integration_agreement() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let mut count = 0usize;
    for parity in [Parity::Even, Parity::Odd] {
        for j in 0..=6usize {
            for k in 0..=12usize {
                let recurrence = moment_a(parity, j, k);
                let power = match parity {
                    Parity::Even => 2 * j,
                    Parity::Odd => 2 * j + 1,
                };
                let direct = parity_hermite_function(parity, k).moment(power);
                if recurrence != direct {
                    fails.push(format!(
                        "{parity:?} j={j} k={k}: recurrence {recurrence} vs integral {direct}"
                    ));
                }
                count += 1;
            }
        }
    }
    if count != 182 {
        fails.push(format!("expected 182 identities, checked {count}"));
    }
    conclude(4, "recurrence vs integration", started, Some(30.0), fails);
}

#[test]
fn criterion_05_moment_condition_certificates() {
    let started = Instant::now();
    let mut fails = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for order in 1..=5usize {
            for indices in sampled_index_sets(parity, order) {
                let spec = BasicVectorSpec::new(parity, indices.clone()).unwrap();
                let phi = match basic_vector(&spec) {
                    Ok(phi) => phi,
                    Err(e) => {
                        fails.push(format!("{parity:?} {indices:?}: construction failed: {e}"));
                        continue;
                    }
                };
                // Exact vanishing of every required moment.
                for ell in 0..=order {
                    let m = phi.moment(ell);
                    if !m.is_zero() {
                        fails.push(format!(
                            "{parity:?} {indices:?}: moment ell={ell} is {m}"
                        ));
                    }
                }
                // Parity: moments of the opposite parity vanish as well.
                for ell in 0..=2 * order + 1 {
                    let opposite = match parity {
                        Parity::Even => ell % 2 == 1,
                        Parity::Odd => ell % 2 == 0,
                    };
                    if opposite && !phi.moment(ell).is_zero() {
                        fails.push(format!(
                            "{parity:?} {indices:?}: opposite-parity moment ell={ell} nonzero"
                        ));
                    }
                }
                // Row duplication: stacking any moment row on the full row
                // block gives a singular matrix, exactly.
                let a_rows: Vec<Vec<Scalar>> = (0..order)
                    .map(|j| indices.iter().map(|&k| moment_a(parity, j, k)).collect())
                    .collect();
                for j in 0..order {
                    let mut m = Vec::with_capacity(order + 1);
                    m.push(a_rows[j].clone());
                    m.extend(a_rows.iter().cloned());
                    let det = scalar_det(&m);
                    if !det.is_zero() {
                        fails.push(format!(
                            "{parity:?} {indices:?}: duplicated row {j} determinant {det}"
                        ));
                    }
                }
            }
        }
    }
    conclude(5, "moment certificates", started, Some(120.0), fails);
}

#[test]
fn criterion_06_domain_certificates() {
    let started = Instant::now();
    let mut fails = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for order in 1..=5usize {
            for indices in sampled_index_sets(parity, order) {
                let spec = BasicVectorSpec::new(parity, indices.clone()).unwrap();
                let phi = basic_vector(&spec).unwrap();
                for idx in indices_of_order(order) {
                    let report = domain_membership(idx, &phi);
                    if !report.pass {
                        fails.push(format!(
                            "{parity:?} {indices:?} under {idx}: {:?}",
                            report.failures()
                        ));
                        continue;
                    }
                    let image = apply_operator(idx, &phi);
                    if !image.erf_terms().is_empty() || !image.free_part().is_zero() {
                        fails.push(format!(
                            "{parity:?} {indices:?} under {idx}: erf/free parts not identically zero"
                        ));
                    }
                }
            }
        }
    }
    conclude(6, "domain certificates", started, Some(300.0), fails);
}

#[test]
fn criterion_07_moment_constant_exponents() {
    let started = Instant::now();
    let mut fails = Vec::new();
    for j in 0..=4usize {
        let even = asymptotic_exponent(|k| a_even_f64(j, k).abs(), FIT_LO, FIT_HI, FIT_SAMPLES)
            .unwrap();
        let want = j as f64 - 0.25;
        if (even - want).abs() > EXPONENT_TOL {
            fails.push(format!("even j={j}: slope {even:.4}, want {want} +- {EXPONENT_TOL}"));
        }
        let odd = asymptotic_exponent(|k| a_odd_f64(j, k).abs(), FIT_LO, FIT_HI, FIT_SAMPLES)
            .unwrap();
        let want = j as f64 + 0.25;
        if (odd - want).abs() > EXPONENT_TOL {
            fails.push(format!("odd j={j}: slope {odd:.4}, want {want} +- {EXPONENT_TOL}"));
        }
    }
    conclude(7, "moment-constant exponents", started, None, fails);
}

#[test]
fn criterion_08_implied_coefficient_growth() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let even = asymptotic_exponent(
        |m| coefficient_ratio_n1(Parity::Even, 0, m as usize).to_f64().abs(),
        FIT_LO,
        FIT_HI,
        FIT_SAMPLES,
    )
    .unwrap();
    if (even + 0.25).abs() > EXPONENT_TOL {
        fails.push(format!("even ratio slope {even:.4}, want -0.25 +- {EXPONENT_TOL}"));
    }
    let odd = asymptotic_exponent(
        |m| coefficient_ratio_n1(Parity::Odd, 0, m as usize).to_f64().abs(),
        FIT_LO,
        FIT_HI,
        FIT_SAMPLES,
    )
    .unwrap();
    if (odd - 0.25).abs() > EXPONENT_TOL {
        fails.push(format!("odd ratio slope {odd:.4}, want 0.25 +- {EXPONENT_TOL}"));
    }
    let s100 = implied_l2_partial_sum(Parity::Even, 100);
    let s10k = implied_l2_partial_sum(Parity::Even, 10_000);
    if !(s10k > 10.0 * s100) {
        fails.push(format!(
            "divergence witness too weak: S(1e4)={s10k:.3} vs 10*S(100)={:.3}",
            10.0 * s100
        ));
    }
    conclude(8, "implied-coefficient growth", started, None, fails);
}

#[test]
fn criterion_09_bordered_determinant_diagnostics() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0900);
    for parity in [Parity::Even, Parity::Odd] {
        for n in 2..=4usize {
            for sample in 0..3 {
                let inst = random_instance(parity, n, MAX_INDEX, &mut rng);
                let label = format!("{parity:?} N={n} sample {sample} {:?}", inst.indices());
                let p = k0_root_polynomial(&inst);
                if p.degree() != n as isize - 1 {
                    fails.push(format!("{label}: polynomial degree {} not {}", p.degree(), n - 1));
                }
                let roots = integer_roots_in_window(&p, 0, 40);
                if roots.len() > n - 1 {
                    fails.push(format!("{label}: {} integer roots {roots:?}", roots.len()));
                }
                let verdict = annihilator_kernel_test(parity, inst.indices()).unwrap();
                if !verdict.nonsingular {
                    fails.push(format!("{label}: cofactor matrix singular"));
                }
                // Growth exponent (N-1) -/+ 1/4: the integer part is the exact
                // polynomial degree asserted above; the fractional part is the
                // column-factor exponent, isolated by dividing the float-LU
                // determinant route by the exact cofactor-polynomial route.
                // A raw finite-window slope of the full determinant would be
                // biased by polynomial roots near the window edge; the ratio
                // of the two independent routes is not.
                let slope = asymptotic_exponent(
                    |k| {
                        (phi_k0_determinant_f64(&inst, k as usize) / p.eval_f64(k as f64)).abs()
                    },
                    FIT_LO,
                    FIT_HI,
                    FIT_SAMPLES,
                )
                .unwrap();
                let want = match parity {
                    Parity::Even => -0.25,
                    Parity::Odd => 0.25,
                };
                if (slope - want).abs() > GROWTH_TOL {
                    fails.push(format!(
                        "{label}: column-factor slope {slope:.4}, want {want} +- {GROWTH_TOL}"
                    ));
                }
            }
        }
    }
    conclude(9, "bordered-determinant diagnostics", started, None, fails);
}

#[test]
fn criterion_10_domain_nesting() {
    let started = Instant::now();
    let mut fails = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for indices in sampled_index_sets(parity, 5) {
            let spec = BasicVectorSpec::new(parity, indices.clone()).unwrap();
            let phi = basic_vector(&spec).unwrap();
            for low in 0..=4usize {
                let report = domain_nesting_check(5, low, &phi).unwrap();
                if !report.pass {
                    fails.push(format!(
                        "{parity:?} {indices:?} at order {low}: {:?}",
                        report.failures()
                    ));
                }
            }
        }
    }
    conclude(10, "domain nesting", started, Some(120.0), fails);
}

#[test]
fn criterion_11_series_partial_sums() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let mu = BigRational::new(3.into(), 2.into());
    let omega = BigRational::new(1.into(), 2.into());
    for k_cap in [0usize, 1] {
        let order = 4 * k_cap + 1;
        let spec = BasicVectorSpec::new(Parity::Even, (0..=order).collect()).unwrap();
        let phi = basic_vector(&spec).unwrap();
        let series = HOSeriesSpec::new(k_cap, mu.clone(), omega.clone()).unwrap();
        match ho_partial_sum_apply(&series, &phi) {
            Ok(image) => {
                if !image.is_square_integrable() {
                    fails.push(format!("K={k_cap}: image not certified square integrable"));
                }
                if k_cap == 0 {
                    let direct = apply_operator(OperatorIndex::new(1, 1).unwrap(), &phi)
                        .scale(&Scalar::from_rational(-mu.clone()));
                    if image != direct {
                        fails.push("K=0 sum differs from -mu times the first operator".into());
                    }
                }
            }
            Err(e) => fails.push(format!("K={k_cap}: series application rejected: {e}")),
        }
    }
    conclude(11, "series partial sums", started, None, fails);
}
