//! Basic vectors: finite Hermite-function combinations whose first N+1
//! moments vanish exactly, built as row-0 cofactor expansions of the
//! (N+1)×(N+1) moment matrix. The exactness route factors each cofactor
//! into per-column radical constants times an integer minor of the
//! f-polynomial value matrix; the direct Scalar-determinant route is kept
//! as an independent cross-check.

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::hermite::hermite_function;
use crate::linalg::{bigint_det, f64_det, scalar_det, submatrix};
use crate::moments::{
    a_even_f64, a_odd_f64, column_constant_even, column_constant_odd, f_poly, f_sum_poly,
    moment_a_even, moment_a_odd,
};
use crate::poly::Parity;
use crate::polygauss::PolyGauss;
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum BasicVecError {
    #[error("index set must contain at least 2 indices (order >= 1), got {got}")]
    OrderTooSmall { got: usize },
    #[error("indices must be pairwise distinct, got duplicate {duplicate}")]
    DuplicateIndex { duplicate: usize },
    #[error("degenerate pair: m = n = {m}")]
    DegeneratePair { m: usize },
    #[error("all integer minors vanish for indices {indices:?}; the construction yields the zero vector")]
    DegenerateVector { indices: Vec<usize> },
}

/// Identifies one determinant-constructed basic vector: parity, order
/// `N = indices.len() - 1`, and the distinct Hermite indices `k_0..k_N`
/// (canonicalized ascending; reordering only flips the overall sign).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicVectorSpec {
    pub parity: Parity,
    pub indices: Vec<usize>,
}

impl BasicVectorSpec {
    pub fn new(parity: Parity, mut indices: Vec<usize>) -> Result<Self, BasicVecError> {
        if indices.len() < 2 {
            return Err(BasicVecError::OrderTooSmall { got: indices.len() });
        }
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(BasicVecError::DuplicateIndex { duplicate: w[0] });
        }
        Ok(BasicVectorSpec { parity, indices })
    }

    /// Order N of the vector: number of vanishing moments minus one.
    pub fn order(&self) -> usize {
        self.indices.len() - 1
    }
}

/// The Hermite function a column refers to: `ψ_{2k}` for even parity,
/// `ψ_{2k+1}` for odd.
pub fn parity_hermite_function(parity: Parity, k: usize) -> PolyGauss {
    match parity {
        Parity::Even => hermite_function(2 * k),
        Parity::Odd => hermite_function(2 * k + 1),
    }
}

/// Exact moment coefficient of the family: `A(j,k) = ∫ q^{2j} ψ_{2k}` (even)
/// or `∫ q^{2j+1} ψ_{2k+1}` (odd).
pub fn moment_a(parity: Parity, j: usize, k: usize) -> Scalar {
    match parity {
        Parity::Even => moment_a_even(j, k),
        Parity::Odd => moment_a_odd(j, k),
    }
}

fn column_constant(parity: Parity, k: usize) -> Scalar {
    match parity {
        Parity::Even => column_constant_even(k),
        Parity::Odd => column_constant_odd(k),
    }
}

fn f_value(parity: Parity, j: usize, k: usize) -> BigInt {
    match parity {
        Parity::Even => f_poly(j).eval_int(k as i64),
        Parity::Odd => f_sum_poly(j).eval_int(k as i64),
    }
}

fn a_f64(parity: Parity, j: usize, k: usize) -> f64 {
    match parity {
        Parity::Even => a_even_f64(j, k as u64),
        Parity::Odd => a_odd_f64(j, k as u64),
    }
}

/// The moment rows of the bordered matrix: row 0 is the symbolic function
/// slot (not stored), rows `1..=N` hold `A(j, k_i)` for `j = 0..N-1`.
#[derive(Clone, Debug)]
pub struct MomentMatrix {
    pub parity: Parity,
    pub indices: Vec<usize>,
    /// `a_rows[j][i] = A(j, k_i)` for `j = 0..N-1`, `i = 0..N`.
    pub a_rows: Vec<Vec<Scalar>>,
}

impl MomentMatrix {
    /// Row-0 cofactor `C_{0,i} = (-1)^i · det(A rows with column i removed)`,
    /// via the exact Scalar determinant (cross-check route).
    pub fn cofactor_row0(&self, i: usize) -> Scalar {
        let minor = scalar_det(&submatrix(&self.a_rows, &[], &[i]));
        if i % 2 == 1 {
            -&minor
        } else {
            minor
        }
    }
}

pub fn moment_matrix(spec: &BasicVectorSpec) -> MomentMatrix {
    let n = spec.order();
    MomentMatrix {
        parity: spec.parity,
        indices: spec.indices.clone(),
        a_rows: (0..n)
            .map(|j| {
                spec.indices
                    .iter()
                    .map(|&k| moment_a(spec.parity, j, k))
                    .collect()
            })
            .collect(),
    }
}

/// The factored exact route: `A(j, k_i) = f_j(k_i) · c_i` with per-column
/// radical constants `c_i`, so each row-0 cofactor splits as
/// `C_{0,i} = (-1)^i · (Π_{j≠i} c_j) · M_i` with `M_i` an integer minor of
/// the f-polynomial value matrix.
#[derive(Clone, Debug)]
pub struct RationalReduction {
    pub parity: Parity,
    pub indices: Vec<usize>,
    pub column_constants: Vec<Scalar>,
    pub minors: Vec<BigInt>,
}

impl RationalReduction {
    /// `C_{0,i} = (-1)^i · (Π_{j≠i} c_j) · M_i`.
    pub fn cofactor(&self, i: usize) -> Scalar {
        let mut prod = Scalar::from_rational(BigRational::from_integer(self.minors[i].clone()));
        for (j, c) in self.column_constants.iter().enumerate() {
            if j != i {
                prod = &prod * c;
            }
        }
        if i % 2 == 1 {
            -&prod
        } else {
            prod
        }
    }

    pub fn cofactors(&self) -> Vec<Scalar> {
        (0..self.minors.len()).map(|i| self.cofactor(i)).collect()
    }
}

pub fn rational_reduction(spec: &BasicVectorSpec) -> RationalReduction {
    let n = spec.order();
    let f_matrix: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            spec.indices
                .iter()
                .map(|&k| f_value(spec.parity, j, k))
                .collect()
        })
        .collect();
    let minors = (0..=n)
        .map(|i| bigint_det(&submatrix(&f_matrix, &[], &[i])))
        .collect();
    RationalReduction {
        parity: spec.parity,
        indices: spec.indices.clone(),
        column_constants: spec
            .indices
            .iter()
            .map(|&k| column_constant(spec.parity, k))
            .collect(),
        minors,
    }
}

/// Float route to the row-0 cofactors, fully independent of the exact
/// arithmetic: float moment matrix, float LU minors.
pub fn cofactors_f64(spec: &BasicVectorSpec) -> Vec<f64> {
    let n = spec.order();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            spec.indices
                .iter()
                .map(|&k| a_f64(spec.parity, j, k))
                .collect()
        })
        .collect();
    (0..=n)
        .map(|i| {
            let minor = f64_det(&submatrix(&a, &[], &[i]));
            if i % 2 == 1 {
                -minor
            } else {
                minor
            }
        })
        .collect()
}

/// The order-1 pairs: `A(0,n)·ψ_{2m} - A(0,m)·ψ_{2n}` (even) and the same
/// with `ψ_{2m+1}, ψ_{2n+1}` (odd). Both moment conditions (orders 0 and 1)
/// hold exactly.
pub fn basic_vector_order1(
    parity: Parity,
    m: usize,
    n: usize,
) -> Result<PolyGauss, BasicVecError> {
    if m == n {
        return Err(BasicVecError::DegeneratePair { m });
    }
    let a_n = moment_a(parity, 0, n);
    let a_m = moment_a(parity, 0, m);
    Ok(&parity_hermite_function(parity, m).scale(&a_n)
        - &parity_hermite_function(parity, n).scale(&a_m))
}

/// The determinant basic vector: `φ = Σ_i C_{0,i} · ψ_{2k_i(+1)}`, computed
/// through [`rational_reduction`]. All moments of orders `0..=N` vanish
/// exactly; the result is reported degenerate (never silently zero) if every
/// integer minor vanishes.
pub fn basic_vector(spec: &BasicVectorSpec) -> Result<PolyGauss, BasicVecError> {
    let red = rational_reduction(spec);
    if red.minors.iter().all(|m| m.is_zero()) {
        return Err(BasicVecError::DegenerateVector {
            indices: spec.indices.clone(),
        });
    }
    let mut phi = PolyGauss::zero();
    for (i, &k) in spec.indices.iter().enumerate() {
        phi = &phi + &parity_hermite_function(spec.parity, k).scale(&red.cofactor(i));
    }
    Ok(phi)
}

/// Report with the exact residual `∫ q^ℓ φ` for each `ℓ = 0..=n`; passes
/// iff every residual is identically zero.
pub fn verify_moment_conditions(phi: &PolyGauss, n: usize) -> VerificationReport {
    let checks = (0..=n)
        .map(|ell| Check::exact(format!("moment ell={ell}"), phi.moment(ell)))
        .collect();
    VerificationReport::new(format!("moment conditions through order {n}"), checks)
}

/// L²-normalized copy, when the squared norm is a single field element whose
/// square root stays in the field (always the case for basic vectors, whose
/// squared norm is rational times an integer power of √π).
pub fn normalize_l2(phi: &PolyGauss) -> Option<PolyGauss> {
    let n2 = phi.l2_norm_sq();
    let mut terms = n2.terms();
    let (tag, c) = terms.next()?;
    if terms.next().is_some() || !tag.radicand.is_one() || tag.pi_quarters % 2 != 0 {
        return None;
    }
    if !c.is_positive() {
        return None;
    }
    let norm = &Scalar::sqrt_rational(c) * &Scalar::pi_quarter_pow(tag.pi_quarters / 2);
    Some(phi.scale(&norm.inv()?))
}
