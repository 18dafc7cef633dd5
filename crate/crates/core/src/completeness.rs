//! Finite diagnostics behind the density argument for the span of the
//! moment-condition vectors.
//!
//! Three computable ingredients are exposed: the growth law of the Hermite
//! coefficients forced on any function orthogonal to every order-1 vector
//! (with an explicit square-summability failure witness), the bordered
//! determinant tying one free coefficient to `N` fixed ones together with its
//! polynomial structure in the free column index, and a cofactor-matrix
//! nonsingularity test showing the zero vector is the only coefficient
//! choice annihilated by all the bordered determinants at once.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::basicvec::moment_a;
use crate::linalg::{f64_det, scalar_det};
use crate::moments::{a_even_f64, a_odd_f64, f_poly, f_sum_poly};
use crate::poly::{Parity, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum CompletenessError {
    #[error("indices must be distinct, {duplicate} appears twice")]
    DuplicateIndex { duplicate: usize },
    #[error("need one coefficient per index, got {indices} indices and {coefficients} coefficients")]
    LengthMismatch { indices: usize, coefficients: usize },
    #[error("instance needs at least one fixed index")]
    EmptyInstance,
    #[error("free index {k0} collides with a fixed index")]
    IndexCollision { k0: usize },
}

fn check_distinct(indices: &[usize]) -> Result<(), CompletenessError> {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(CompletenessError::DuplicateIndex { duplicate: pair[0] });
        }
    }
    Ok(())
}

/// A single-parity trial function fixed on `N` Hermite coefficients:
/// parity-index `indices[i]` carries coefficient `coefficients[i]`, all other
/// coefficients are treated as unknowns tied to these by the moment
/// conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityInstance {
    parity: Parity,
    indices: Vec<usize>,
    coefficients: Vec<Scalar>,
}

impl OrthogonalityInstance {
    pub fn new(
        parity: Parity,
        indices: Vec<usize>,
        coefficients: Vec<Scalar>,
    ) -> Result<Self, CompletenessError> {
        if indices.is_empty() {
            return Err(CompletenessError::EmptyInstance);
        }
        if indices.len() != coefficients.len() {
            return Err(CompletenessError::LengthMismatch {
                indices: indices.len(),
                coefficients: coefficients.len(),
            });
        }
        check_distinct(&indices)?;
        Ok(OrthogonalityInstance {
            parity,
            indices,
            coefficients,
        })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Number of fixed coefficients, `N`.
    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    /// True when every fixed coefficient is zero; the bordered determinant
    /// then vanishes identically and no genericity conclusions apply.
    pub fn is_degenerate(&self) -> bool {
        self.coefficients.iter().all(Scalar::is_zero)
    }
}

/// Seeded generic instance: `n` distinct parity-indices drawn from
/// `0..=max_index`, sorted ascending, with nonzero integer coefficients in
/// `[-9, 9]`.
pub fn random_instance<R: Rng>(
    parity: Parity,
    n: usize,
    max_index: usize,
    rng: &mut R,
) -> OrthogonalityInstance {
    assert!(n >= 1 && n <= max_index + 1, "cannot draw {n} distinct indices from 0..={max_index}");
    let mut pool: Vec<usize> = (0..=max_index).collect();
    pool.shuffle(rng);
    let mut indices: Vec<usize> = pool.into_iter().take(n).collect();
    indices.sort_unstable();
    let coefficients = (0..n)
        .map(|_| loop {
            let c: i64 = rng.random_range(-9..=9);
            if c != 0 {
                break Scalar::from_int(c);
            }
        })
        .collect();
    OrthogonalityInstance::new(parity, indices, coefficients)
        .expect("drawn indices are distinct by construction")
}

/// Exact ratio `phi_m / phi_n` (in parity indexing) forced on the Hermite
/// coefficients of any single-parity function orthogonal to every order-1
/// moment-condition vector: the ratio of the order-0 moment constants,
/// which decays like `m^(-1/4)` (even) and grows like `m^(+1/4)` (odd).
/// Computed from the per-column constants directly (the order-0 moment
/// constant is the column constant up to a parity factor that cancels), so
/// large indices stay cheap.
pub fn coefficient_ratio_n1(parity: Parity, n: usize, m: usize) -> Scalar {
    let num = k0_column_factor(parity, m);
    let den = k0_column_factor(parity, n);
    &num * &den.inv().expect("column constants are single nonzero terms")
}

/// Partial sum `Σ_{m=1..m_max} |phi_m / phi_0|²` of the squared implied
/// coefficients (reference index 0, unit reference coefficient), evaluated
/// in floating point by term iteration. Even-parity terms behave like
/// `1/sqrt(pi m)`, so the sum grows without bound: the implied sequence is
/// never square-summable for a nonzero reference coefficient.
pub fn implied_l2_partial_sum(parity: Parity, m_max: u64) -> f64 {
    // t_m = C(2m, m) / 4^m, iterated as t_m = t_{m-1} * (2m-1) / (2m);
    // |ratio|^2 is t_m (even) and (2m+1) t_m (odd, reference weight 1).
    let mut t = 1.0_f64;
    let mut sum = 0.0_f64;
    for m in 1..=m_max {
        t *= (2 * m - 1) as f64 / (2 * m) as f64;
        sum += match parity {
            Parity::Even => t,
            Parity::Odd => (2 * m + 1) as f64 * t,
        };
    }
    sum
}

fn moment_row_f64(parity: Parity, j: usize, k: u64) -> f64 {
    match parity {
        Parity::Even => a_even_f64(j, k),
        Parity::Odd => a_odd_f64(j, k),
    }
}

/// Order-0 moment constant as a float (the per-column factor of every
/// moment-constant column).
fn column_constant_f64(parity: Parity, k: u64) -> f64 {
    match parity {
        Parity::Even => a_even_f64(0, k),
        Parity::Odd => a_odd_f64(0, k) / 2.0,
    }
}

fn k0_column_factor(parity: Parity, k0: usize) -> Scalar {
    match parity {
        Parity::Even => crate::moments::column_constant_even(k0),
        Parity::Odd => crate::moments::column_constant_odd(k0),
    }
}

/// Exact bordered determinant: the `(N+1) x (N+1)` matrix whose first row is
/// `(0, phi_1, ..., phi_N)` and whose remaining rows are the moment
/// constants of orders `0..N-1` evaluated at the columns
/// `(k0, indices...)`. Its vanishing is exactly the condition that the
/// coefficient at the free index `k0` is determined by the fixed ones.
pub fn phi_k0_determinant(
    inst: &OrthogonalityInstance,
    k0: usize,
) -> Result<Scalar, CompletenessError> {
    if inst.indices.contains(&k0) {
        return Err(CompletenessError::IndexCollision { k0 });
    }
    let n = inst.order();
    let mut matrix: Vec<Vec<Scalar>> = Vec::with_capacity(n + 1);
    let mut first = Vec::with_capacity(n + 1);
    first.push(Scalar::zero());
    first.extend(inst.coefficients.iter().cloned());
    matrix.push(first);
    for j in 0..n {
        let mut row = Vec::with_capacity(n + 1);
        row.push(moment_a(inst.parity, j, k0));
        row.extend(inst.indices.iter().map(|&k| moment_a(inst.parity, j, k)));
        matrix.push(row);
    }
    Ok(scalar_det(&matrix))
}

/// Floating-point route for the same bordered determinant, by LU
/// factorization of the float matrix; usable far beyond the exact range
/// (free index up to thousands) for growth fits.
pub fn phi_k0_determinant_f64(inst: &OrthogonalityInstance, k0: usize) -> f64 {
    let n = inst.order();
    let mut matrix: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut first = Vec::with_capacity(n + 1);
    first.push(0.0);
    first.extend(inst.coefficients.iter().map(Scalar::to_f64));
    matrix.push(first);
    for j in 0..n {
        let mut row = Vec::with_capacity(n + 1);
        row.push(moment_row_f64(inst.parity, j, k0 as u64));
        row.extend(
            inst.indices
                .iter()
                .map(|&k| moment_row_f64(inst.parity, j, k as u64)),
        );
        matrix.push(row);
    }
    f64_det(&matrix)
}

/// The `(N+1) x N` fixed block of the bordered matrix: coefficient row on
/// top, then the moment-constant rows at the fixed columns only.
fn fixed_block(inst: &OrthogonalityInstance) -> Vec<Vec<Scalar>> {
    let n = inst.order();
    let mut block = Vec::with_capacity(n + 1);
    block.push(inst.coefficients.clone());
    for j in 0..n {
        block.push(
            inst.indices
                .iter()
                .map(|&k| moment_a(inst.parity, j, k))
                .collect(),
        );
    }
    block
}

/// Signed cofactors of the free column of the bordered determinant:
/// entry `j` multiplies the order-`j` moment constant at the free index.
/// They depend only on the fixed data, never on the free index.
pub fn k0_cofactors(inst: &OrthogonalityInstance) -> Vec<Scalar> {
    let block = fixed_block(inst);
    (0..inst.order())
        .map(|j| {
            let minor: Vec<Vec<Scalar>> = block
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j + 1)
                .map(|(_, row)| row.clone())
                .collect();
            let det = scalar_det(&minor);
            if j % 2 == 0 {
                -det
            } else {
                det
            }
        })
        .collect()
}

/// The bordered determinant as a function of the free index `k0` factors as
/// (order-0 moment constant at `k0`) x (polynomial in `k0`); this returns
/// that polynomial: `Σ_j f_j(k0) · c_j` (even) or
/// `Σ_j (f_j(k0+1) + f_j(k0)) · c_j` (odd), with `c_j` the free-column
/// cofactors. Degree is exactly `N - 1` when the leading cofactor is
/// nonzero, so the determinant has at most `N - 1` integer roots.
pub fn k0_root_polynomial(inst: &OrthogonalityInstance) -> Poly {
    let cof = k0_cofactors(inst);
    let mut acc = Poly::zero();
    for (j, c) in cof.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let f = match inst.parity {
            Parity::Even => f_poly(j),
            Parity::Odd => f_sum_poly(j),
        };
        acc = &acc + &f.poly.scale(c);
    }
    acc
}

/// Integer points `lo..=hi` at which the polynomial vanishes exactly.
pub fn integer_roots_in_window(poly: &Poly, lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi)
        .filter(|&k| poly.eval(&Scalar::from_int(k)).is_zero())
        .collect()
}

/// Outcome of the cofactor-kernel nonsingularity test.
#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorVerdict {
    pub parity: Parity,
    pub indices: Vec<usize>,
    /// Exact determinant of the cofactor matrix `L`.
    pub determinant: Scalar,
    /// `det L != 0`: the only coefficient vector making every reduced
    /// bordered determinant vanish is the zero vector.
    pub nonsingular: bool,
}

fn moment_block(parity: Parity, indices: &[usize]) -> Vec<Vec<Scalar>> {
    (0..indices.len())
        .map(|j| indices.iter().map(|&k| moment_a(parity, j, k)).collect())
        .collect()
}

/// Builds the `N x N` matrix `L` whose row `j` holds the signed cofactors of
/// the fixed coefficients inside the reduced bordered determinant that omits
/// the order-`j` moment row, and reports whether `det L != 0`. Each reduced
/// determinant is linear in the coefficient vector with gradient row
/// `L[j]`, so nonsingularity means the joint kernel is trivial.
pub fn annihilator_kernel_test(
    parity: Parity,
    indices: &[usize],
) -> Result<AnnihilatorVerdict, CompletenessError> {
    check_distinct(indices)?;
    let n = indices.len();
    let block = moment_block(parity, indices);
    let mut l_matrix: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for drop_row in 0..n {
        let rows: Vec<&Vec<Scalar>> = block
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != drop_row)
            .map(|(_, row)| row)
            .collect();
        let mut l_row = Vec::with_capacity(n);
        for drop_col in 0..n {
            let minor: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != drop_col)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = scalar_det(&minor);
            l_row.push(if drop_col % 2 == 0 { det } else { -det });
        }
        l_matrix.push(l_row);
    }
    let determinant = scalar_det(&l_matrix);
    Ok(AnnihilatorVerdict {
        parity,
        indices: indices.to_vec(),
        nonsingular: !determinant.is_zero(),
        determinant,
    })
}

/// The reduced bordered determinants themselves: for each `j`, the
/// determinant of the coefficient row stacked on the moment rows of all
/// orders except `j`, over the fixed columns. Used to cross-check the
/// linearity relation against the cofactor matrix.
pub fn reduced_determinants(inst: &OrthogonalityInstance) -> Vec<Scalar> {
    let n = inst.order();
    let block = moment_block(inst.parity, &inst.indices);
    (0..n)
        .map(|drop_row| {
            let mut m: Vec<Vec<Scalar>> = Vec::with_capacity(n);
            m.push(inst.coefficients.clone());
            for (r, row) in block.iter().enumerate() {
                if r != drop_row {
                    m.push(row.clone());
                }
            }
            scalar_det(&m)
        })
        .collect()
}

/// Exact factor identity for the bordered determinant: value at free index
/// `k0` equals (order-0 moment constant at `k0`) x (root polynomial at
/// `k0`).
pub fn determinant_via_root_polynomial(
    inst: &OrthogonalityInstance,
    k0: usize,
) -> Result<Scalar, CompletenessError> {
    if inst.indices.contains(&k0) {
        return Err(CompletenessError::IndexCollision { k0 });
    }
    let p = k0_root_polynomial(inst);
    Ok(&k0_column_factor(inst.parity, k0) * &p.eval(&Scalar::from_int(k0 as i64)))
}

/// Float route for the factor identity, for growth fits at large `k0`.
pub fn determinant_via_root_polynomial_f64(inst: &OrthogonalityInstance, k0: usize) -> f64 {
    let p = k0_root_polynomial(inst);
    column_constant_f64(inst.parity, k0 as u64) * p.eval_f64(k0 as f64)
}
