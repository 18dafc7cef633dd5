//! Exact constants of the closed field generated over the rationals by square
//! roots of positive integers and quarter powers of pi.
//!
//! A [`Scalar`] is a finite sum of terms `c * sqrt(r) * pi^(b/4)` with `c` a
//! rational, `r` a positive squarefree integer, and `b` an integer. The family
//! `{sqrt(r) * pi^(b/4)}` over distinct `(r, b)` is linearly independent over
//! the rationals, so the term map is a canonical form: equality is map
//! equality, zero is the empty map.
//!
//! Products merge radical tags without any integer factorization: for
//! squarefree `r1`, `r2` with `g = gcd(r1, r2)`, the parts `r1/g` and `r2/g`
//! are coprime and squarefree, hence
//! `sqrt(r1) * sqrt(r2) = g * sqrt((r1/g) * (r2/g))` is again canonical.
//! Factorization is only needed when a radicand is first introduced
//! ([`Scalar::sqrt_uint`], [`Scalar::sqrt_rational`]) and for factorials,
//! where [`Scalar::sqrt_factorial`] reads prime exponents off Legendre's
//! formula instead of factoring `n!` itself.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::bigint::{BigInt, BigUint};
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Basis tag of one term: `sqrt(radicand) * pi^(pi_quarters / 4)`.
///
/// `radicand` is a positive squarefree integer; `radicand = 1`, `pi_quarters
/// = 0` tags the rational part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RadicalTag {
    pub radicand: BigUint,
    pub pi_quarters: i64,
}

/// Exact element `sum of c * sqrt(r) * pi^(b/4)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Scalar {
    terms: BTreeMap<RadicalTag, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut s = Scalar::zero();
        if !c.is_zero() {
            s.terms.insert(
                RadicalTag { radicand: BigUint::one(), pi_quarters: 0 },
                c,
            );
        }
        s
    }

    /// Single term `c * sqrt(radicand) * pi^(pi_quarters/4)`; the radicand
    /// need not be squarefree, square factors move into the coefficient.
    pub fn term(c: BigRational, radicand: &BigUint, pi_quarters: i64) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        let (root, free) = split_square(radicand);
        let coeff = c * BigRational::from_integer(BigInt::from(root));
        let mut s = Scalar::zero();
        s.terms.insert(RadicalTag { radicand: free, pi_quarters }, coeff);
        s
    }

    /// `sqrt(n)` for a positive integer `n`.
    pub fn sqrt_uint(n: u64) -> Self {
        assert!(n > 0, "radicand must be positive");
        Scalar::term(BigRational::one(), &BigUint::from(n), 0)
    }

    /// `sqrt(x)` for a positive rational `x`: `sqrt(p/q) = sqrt(p q) / q`.
    pub fn sqrt_rational(x: &BigRational) -> Self {
        assert!(x.is_positive(), "radicand must be positive");
        let p = x.numer().to_biguint().expect("positive numerator");
        let q = x.denom().to_biguint().expect("positive denominator");
        let c = BigRational::new(BigInt::one(), x.denom().clone());
        Scalar::term(c, &(p * q), 0)
    }

    /// `sqrt(n!)`, with the squarefree part read from prime exponents via
    /// Legendre's formula, never by factoring `n!` itself.
    pub fn sqrt_factorial(n: u64) -> Self {
        let mut root = BigUint::one();
        let mut free = BigUint::one();
        for p in primes_upto(n) {
            let mut e: u64 = 0;
            let mut pk = p;
            while pk <= n {
                e += n / pk;
                match pk.checked_mul(p) {
                    Some(next) => pk = next,
                    None => break,
                }
            }
            root *= BigUint::from(p).pow((e / 2) as u32);
            if e % 2 == 1 {
                free *= BigUint::from(p);
            }
        }
        let mut s = Scalar::zero();
        s.terms.insert(
            RadicalTag { radicand: free, pi_quarters: 0 },
            BigRational::from_integer(BigInt::from(root)),
        );
        s
    }

    /// `pi^(b/4)`.
    pub fn pi_quarter_pow(b: i64) -> Self {
        let mut s = Scalar::zero();
        s.terms.insert(
            RadicalTag { radicand: BigUint::one(), pi_quarters: b },
            BigRational::one(),
        );
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the value lies in the rationals.
    pub fn is_rational(&self) -> bool {
        self.terms.len() <= 1
            && self
                .terms
                .keys()
                .all(|t| t.radicand.is_one() && t.pi_quarters == 0)
    }

    /// The rational value, if [`Scalar::is_rational`].
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if !self.is_rational() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadicalTag, &BigRational)> {
        self.terms.iter()
    }

    /// Exact inverse; `None` for zero and for sums of more than one term
    /// (general radical rationalization is out of scope, single terms cover
    /// every divisor this crate produces).
    pub fn inv(&self) -> Option<Scalar> {
        if self.terms.len() != 1 {
            return None;
        }
        let (tag, c) = self.terms.iter().next().unwrap();
        // 1 / (c sqrt(r) pi^(b/4)) = (1 / (c r)) sqrt(r) pi^(-b/4)
        let r = BigRational::from_integer(BigInt::from(tag.radicand.clone()));
        let coeff = (c * r).recip();
        let mut s = Scalar::zero();
        s.terms.insert(
            RadicalTag { radicand: tag.radicand.clone(), pi_quarters: -tag.pi_quarters },
            coeff,
        );
        Some(s)
    }

    /// Exact quotient `self / other`, defined when `other` is a nonzero
    /// single term.
    pub fn div_exact(&self, other: &Scalar) -> Option<Scalar> {
        Some(self * &other.inv()?)
    }

    pub fn scale_rational(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        let mut s = Scalar::zero();
        for (tag, v) in &self.terms {
            s.terms.insert(tag.clone(), v * c);
        }
        s
    }

    /// Float value. Each term is evaluated in the log domain so coefficients
    /// far beyond f64 range (factorial growth) still combine correctly.
    pub fn to_f64(&self) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        let parts: Vec<(f64, f64)> = self
            .terms
            .iter()
            .map(|(tag, c)| {
                let sign = if c.is_negative() { -1.0 } else { 1.0 };
                (sign, term_ln_abs(tag, c))
            })
            .collect();
        let max_ln = parts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        if max_ln == f64::NEG_INFINITY {
            return 0.0;
        }
        let acc: f64 = parts.iter().map(|(s, ln)| s * (ln - max_ln).exp()).sum();
        // Cancellation below f64 resolution collapses to an honest zero.
        acc * max_ln.exp()
    }

    /// `ln |value|`, or `None` when the value is zero. Exact cancellation is
    /// decided on the term map, not in floats.
    pub fn ln_abs_f64(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        if self.terms.len() == 1 {
            let (tag, c) = self.terms.iter().next().unwrap();
            return Some(term_ln_abs(tag, c));
        }
        let v = self.to_f64();
        if v == 0.0 || !v.is_finite() {
            // Fall back to the dominant term; sums that cancel to sub-float
            // residue have no meaningful float log anyway.
            return self
                .terms
                .iter()
                .map(|(tag, c)| term_ln_abs(tag, c))
                .fold(None, |acc, ln| Some(acc.map_or(ln, |a: f64| a.max(ln))));
        }
        Some(v.abs().ln())
    }

    /// Canonical report string, e.g. `"0"`, `"2*pi^(1/2)"`,
    /// `"3/2*sqrt(2)*pi^(1/4) - 1"`. Deterministic term order (radicand, then
    /// pi exponent ascending).
    pub fn canonical_string(&self) -> String {
        format!("{self}")
    }
}

fn term_ln_abs(tag: &RadicalTag, c: &BigRational) -> f64 {
    ln_biguint(c.numer().magnitude()) - ln_biguint(c.denom().magnitude())
        + 0.5 * ln_biguint(&tag.radicand)
        + tag.pi_quarters as f64 / 4.0 * std::f64::consts::PI.ln()
}

/// `ln` of a positive big integer via bit-length scaling.
fn ln_biguint(u: &BigUint) -> f64 {
    if u.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = u.bits();
    if bits <= 53 {
        return u.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let top = (u >> shift).to_f64().expect("53-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Splits `n = root^2 * free` with `free` squarefree, by trial division.
/// Radicands are introduced only from small integers (widths, recurrence
/// legs), so `n` must fit `u64`.
fn split_square(n: &BigUint) -> (u64, BigUint) {
    let mut m = n
        .to_u64()
        .expect("radicand too large to factor; introduce radicals via sqrt_factorial");
    assert!(m > 0, "radicand must be positive");
    let mut root: u64 = 1;
    let mut free: u64 = 1;
    let mut d: u64 = 2;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut e = 0u32;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            root *= d.pow(e / 2);
            if e % 2 == 1 {
                free *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // Remaining m is prime or 1.
    free *= m;
    (root, BigUint::from(free))
}

/// Primes up to `n` by sieve.
fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if !is_comp[p] {
            out.push(p as u64);
            let mut q = p * p;
            while q <= n {
                is_comp[q] = true;
                q += p;
            }
        }
    }
    out
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// `(2s-1)!! = 1*3*5*...*(2s-1)`; empty product for `s = 0`.
pub fn double_factorial_odd(s: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut i: u64 = 1;
    while i + 1 <= 2 * s {
        acc *= BigUint::from(i);
        i += 2;
    }
    acc
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (tag, c) in &rhs.terms {
            match self.terms.get_mut(tag) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        self.terms.remove(tag);
                    }
                }
                None => {
                    self.terms.insert(tag.clone(), c.clone());
                }
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut out = Scalar::zero();
        for (tag, c) in &self.terms {
            out.terms.insert(tag.clone(), -c);
        }
        out
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &rhs.terms {
                let g = t1.radicand.gcd(&t2.radicand);
                let r = (&t1.radicand / &g) * (&t2.radicand / &g);
                let coeff = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                let tag = RadicalTag {
                    radicand: r,
                    pi_quarters: t1.pi_quarters + t2.pi_quarters,
                };
                match out.terms.get_mut(&tag) {
                    Some(v) => {
                        *v += coeff;
                        if v.is_zero() {
                            out.terms.remove(&tag);
                        }
                    }
                    None => {
                        if !coeff.is_zero() {
                            out.terms.insert(tag, coeff);
                        }
                    }
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (tag, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let coeff_is_one = abs.is_one();
            if !tag.radicand.is_one() {
                factors.push(format!("sqrt({})", tag.radicand));
            }
            if tag.pi_quarters != 0 {
                factors.push(pi_power_string(tag.pi_quarters));
            }
            if !coeff_is_one || factors.is_empty() {
                factors.insert(0, ratio_string(&abs));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn ratio_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn pi_power_string(b: i64) -> String {
    let g = b.gcd(&4);
    let (num, den) = (b / g, 4 / g);
    match (num, den) {
        (1, 1) => "pi".to_string(),
        (n, 1) => format!("pi^{n}"),
        (n, d) => format!("pi^({n}/{d})"),
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical_string())
    }
}
