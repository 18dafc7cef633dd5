//! Physicists' Hermite polynomials and the normalized Hermite functions
//! `ψ_n(q) = (2^{n/2} √(n!) π^{1/4})^{-1} H_n(q) e^{-q²/2}` as exact values.

use num::rational::BigRational;

use crate::poly::Poly;
use crate::polygauss::PolyGauss;
use crate::scalar::Scalar;

/// Physicists' Hermite polynomial `H_n`, by the three-term recurrence
/// `H_{m+1}(q) = 2q·H_m(q) - 2m·H_{m-1}(q)`.
pub fn hermite_poly(n: usize) -> Poly {
    let mut h_prev = Poly::one();
    if n == 0 {
        return h_prev;
    }
    let mut h = Poly::from_ints(&[0, 2]);
    for m in 1..n {
        let next = &h.mul_xpow(1).scale(&Scalar::from_int(2))
            - &h_prev.scale(&Scalar::from_int(2 * m as i64));
        h_prev = h;
        h = next;
    }
    h
}

/// Exact normalization constant `(2^{n/2} √(n!) π^{1/4})^{-1}`.
pub fn hermite_norm(n: usize) -> Scalar {
    let n = n as u64;
    // 2^{n/2} = 2^{floor(n/2)} * (sqrt(2) if n odd)
    let mut pow2 = Scalar::from_rational(BigRational::new(
        num::BigInt::from(1),
        num::BigInt::from(2).pow((n / 2) as u32),
    ));
    if n % 2 == 1 {
        pow2 = &pow2 * &Scalar::sqrt_uint(2).inv().expect("sqrt(2) invertible");
    }
    let inv_sqrt_fact = Scalar::sqrt_factorial(n)
        .inv()
        .expect("sqrt(n!) invertible");
    &(&pow2 * &inv_sqrt_fact) * &Scalar::pi_quarter_pow(-1)
}

/// Normalized Hermite function `ψ_n` as an exact PolyGauss with width 1/2.
pub fn hermite_function(n: usize) -> PolyGauss {
    let half = BigRational::new(1.into(), 2.into());
    PolyGauss::term(half, hermite_poly(n).scale(&hermite_norm(n)))
}
