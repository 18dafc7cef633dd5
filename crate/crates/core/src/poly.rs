//! Dense polynomials over [`Scalar`]. Trailing zero coefficients are
//! stripped; the zero polynomial has degree -1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::BigRational;
use serde::{Serialize, Serializer};

use crate::scalar::Scalar;

/// Parity of a function or polynomial under `q -> -q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(format!("unknown parity {other:?} (expected even|odd)")),
        }
    }
}

/// Polynomial with exact coefficients, `coeffs[k]` the coefficient of `q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * q^power`.
    pub fn monomial(power: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); power + 1];
        coeffs[power] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer-coefficient convenience, `coeffs[k]` the coefficient of `q^k`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `q^k`.
    pub fn mul_xpow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Scalar::from_int(i as i64 + 1))
                .collect(),
        )
    }

    /// `P(x + delta)` by Horner over polynomial arithmetic.
    pub fn shift_var(&self, delta: &BigRational) -> Poly {
        let shift = Poly::from_coeffs(vec![
            Scalar::from_rational(delta.clone()),
            Scalar::one(),
        ]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `Some(parity)` when every nonzero monomial has the same power parity.
    pub fn single_parity(&self) -> Option<Parity> {
        let mut parity = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        parity
    }

    /// True when all coefficients are rational integers.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| {
            c.as_rational()
                .is_some_and(|r| r.denom() == &num::BigInt::from(1))
        })
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let multi_term = c.terms().count() > 1;
            let s = c.canonical_string();
            let (sign_neg, body) = if !multi_term && s.starts_with('-') {
                (true, s[1..].to_string())
            } else {
                (false, s)
            };
            if first {
                if sign_neg {
                    out.push('-');
                }
                first = false;
            } else if sign_neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if power.is_empty() {
                if multi_term {
                    out.push_str(&format!("({body})"));
                } else {
                    out.push_str(&body);
                }
            } else if multi_term {
                out.push_str(&format!("({body})*{power}"));
            } else if body == "1" {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{body}*{power}"));
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned_poly {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}
forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("q"))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string_var("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_stripping() {
        assert_eq!(Poly::zero().degree(), -1);
        let p = Poly::from_coeffs(vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
        assert_eq!(p.degree(), 0);
        assert_eq!(Poly::from_ints(&[1, 0, 4]).degree(), 2);
    }

    #[test]
    fn arithmetic() {
        let p = Poly::from_ints(&[1, 2]); // 1 + 2q
        let q = Poly::from_ints(&[-1, 2]); // -1 + 2q
        assert_eq!(&p * &q, Poly::from_ints(&[-1, 0, 4]));
        assert_eq!(&p + &q, Poly::from_ints(&[0, 4]));
        assert_eq!(&p - &p, Poly::zero());
    }

    #[test]
    fn eval_and_derivative() {
        let p = Poly::from_ints(&[3, 0, 1]); // q^2 + 3
        assert_eq!(p.eval(&Scalar::from_int(2)), Scalar::from_int(7));
        assert_eq!(p.derivative(), Poly::from_ints(&[0, 2]));
        assert!((p.eval_f64(1.5) - 5.25).abs() < 1e-15);
    }

    #[test]
    fn shift() {
        // (q+1)^2 = q^2 + 2q + 1
        let p = Poly::from_ints(&[0, 0, 1]);
        let one = BigRational::from_integer(1.into());
        assert_eq!(p.shift_var(&one), Poly::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn parity() {
        assert_eq!(Poly::from_ints(&[1, 0, 4]).single_parity(), Some(Parity::Even));
        assert_eq!(Poly::from_ints(&[0, 1, 0, 2]).single_parity(), Some(Parity::Odd));
        assert_eq!(Poly::from_ints(&[1, 1]).single_parity(), None);
        assert_eq!(Poly::zero().single_parity(), None);
    }

    #[test]
    fn display() {
        let p = Poly::from_ints(&[1, 0, 4]);
        assert_eq!(p.to_string(), "4*q^2 + 1");
        let m = Poly::from_ints(&[0, -1, 1]);
        assert_eq!(m.to_string(), "q^2 - q");
        let c = Poly::from_coeffs(vec![
            Scalar::zero(),
            &Scalar::one() + &Scalar::sqrt_uint(2),
        ]);
        assert_eq!(c.to_string(), "(1 + sqrt(2))*q");
    }
}
