//! Small dense determinants over the three coefficient domains used here:
//! exact radicals ([`Scalar`], division-free Laplace expansion), exact
//! integers (fraction-free Bareiss elimination), and floats (LU with partial
//! pivoting). Matrices stay small (order ≤ ~12), so clarity wins over
//! asymptotics.

use std::collections::HashMap;

use num::BigInt;
use num::traits::Zero;

use crate::scalar::Scalar;

/// Exact determinant over [`Scalar`] by Laplace expansion along rows, with
/// memoization on the active-column mask (the Scalar field has no general
/// division, so elimination is not available).
pub fn scalar_det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    assert!(n <= 63, "column-mask memoization limited to order 63");
    if n == 0 {
        return Scalar::one();
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, Scalar> = HashMap::new();
    det_masked(m, full, &mut memo)
}

fn det_masked(m: &[Vec<Scalar>], mask: u64, memo: &mut HashMap<u64, Scalar>) -> Scalar {
    if mask == 0 {
        return Scalar::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let n = m.len();
    let row = n - mask.count_ones() as usize;
    let mut acc = Scalar::zero();
    let mut sign_neg = false;
    for col in 0..n {
        if mask & (1 << col) == 0 {
            continue;
        }
        let a = &m[row][col];
        if !a.is_zero() {
            let sub = det_masked(m, mask & !(1 << col), memo);
            let contrib = a * &sub;
            if sign_neg {
                acc = &acc - &contrib;
            } else {
                acc = &acc + &contrib;
            }
        }
        sign_neg = !sign_neg;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Exact integer determinant by Bareiss fraction-free elimination.
pub fn bigint_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i8;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact by the Bareiss identity
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Float determinant by LU decomposition with partial pivoting.
pub fn f64_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return 1.0;
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        if a[pivot_row][k] == 0.0 {
            return 0.0;
        }
        if pivot_row != k {
            a.swap(k, pivot_row);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let factor = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= factor * a[k][j];
            }
        }
    }
    det
}

/// Copy of `m` with the listed rows and columns removed.
pub fn submatrix<T: Clone>(m: &[Vec<T>], skip_rows: &[usize], skip_cols: &[usize]) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| !skip_rows.contains(i))
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| !skip_cols.contains(j))
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}
