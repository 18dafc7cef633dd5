//! Exact algebra of polynomial-Gaussian functions P(q)·exp(-α·q²) and the
//! extended class reached by their antiderivatives, which adds erf terms and
//! a free polynomial part. Everything here is closed-form; floats appear only
//! in evaluation helpers, never in certificates.

use std::fmt;

use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive};
use num::BigInt;
use serde::{Serialize, Serializer};

use crate::poly::{Parity, Poly};
use crate::scalar::{double_factorial_odd, Scalar};

/// Finite sum of terms `P(q)·exp(-α·q²)` with exact polynomial `P` and
/// rational width `α > 0`. Widths are kept distinct and sorted ascending;
/// zero polynomials are stripped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyGauss {
    terms: Vec<(BigRational, Poly)>,
}

impl PolyGauss {
    pub fn zero() -> Self {
        PolyGauss { terms: Vec::new() }
    }

    /// `exp(-α·q²)`.
    pub fn gaussian(alpha: BigRational) -> Self {
        PolyGauss::term(alpha, Poly::one())
    }

    /// `P(q)·exp(-α·q²)`.
    pub fn term(alpha: BigRational, poly: Poly) -> Self {
        PolyGauss::from_terms(vec![(alpha, poly)])
    }

    pub fn from_terms(terms: Vec<(BigRational, Poly)>) -> Self {
        for (alpha, _) in &terms {
            assert!(
                alpha.is_positive(),
                "Gaussian width must be strictly positive, got {alpha}"
            );
        }
        let mut sorted = terms;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigRational, Poly)> = Vec::new();
        for (alpha, poly) in sorted {
            match merged.last_mut() {
                Some((a, p)) if *a == alpha => *p = &*p + &poly,
                _ => merged.push((alpha, poly)),
            }
        }
        merged.retain(|(_, p)| !p.is_zero());
        PolyGauss { terms: merged }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(BigRational, Poly)] {
        &self.terms
    }

    pub fn scale(&self, c: &Scalar) -> PolyGauss {
        PolyGauss::from_terms(
            self.terms
                .iter()
                .map(|(a, p)| (a.clone(), p.scale(c)))
                .collect(),
        )
    }

    /// Multiplication by `q^k`.
    pub fn mul_xpow(&self, k: usize) -> PolyGauss {
        PolyGauss {
            terms: self
                .terms
                .iter()
                .map(|(a, p)| (a.clone(), p.mul_xpow(k)))
                .collect(),
        }
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.terms
            .iter()
            .map(|(a, p)| p.eval_f64(q) * (-ratio_f64(a) * q * q).exp())
            .sum()
    }

    /// Definite parity under `q -> -q`, when every polynomial factor has
    /// single-parity monomials and all terms agree.
    pub fn parity(&self) -> Option<Parity> {
        let mut parity = None;
        for (_, p) in &self.terms {
            match (parity, p.single_parity()?) {
                (None, q) => parity = Some(q),
                (Some(a), b) if a != b => return None,
                _ => {}
            }
        }
        parity
    }

    /// Exact `∫ q^ell · f(q) dq` over the whole line.
    pub fn moment(&self, ell: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for (alpha, poly) in &self.terms {
            for (k, c) in poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                acc += &(c * gauss_moment(alpha, k + ell));
            }
        }
        acc
    }

    /// Symbolic derivative, still a PolyGauss:
    /// `d/dq [P e^{-α q²}] = (P' - 2α q P) e^{-α q²}`.
    pub fn derivative(&self) -> PolyGauss {
        PolyGauss::from_terms(
            self.terms
                .iter()
                .map(|(a, p)| {
                    let two_alpha = Scalar::from_rational(a + a);
                    let dp = &p.derivative() - &p.mul_xpow(1).scale(&two_alpha);
                    (a.clone(), dp)
                })
                .collect(),
        )
    }

    /// Exact cumulative integral `F(q) = ∫_{-∞}^q f(t) dt`.
    ///
    /// Per monomial `t^a e^{-α t²}` the reduction
    /// `∫ t^a e^{-α t²} dt = -t^{a-1} e^{-α t²}/(2α) + ((a-1)/(2α)) ∫ t^{a-2} …`
    /// with bases `a=0` (erf) and `a=1` (pure Gaussian) gives
    /// `F_a(q) = G_a(q) e^{-α q²} + e_a (1 + erf(√α q))`, `F_a(-∞) = 0`.
    pub fn antiderivative_from_minus_inf(&self) -> ExtFunc {
        let mut gauss_terms: Vec<(BigRational, Poly)> = Vec::new();
        let mut erf_terms: Vec<(BigRational, Poly)> = Vec::new();
        let mut free = Poly::zero();
        for (alpha, poly) in &self.terms {
            let max_pow = poly.degree().max(0) as usize;
            let (g_tab, e_tab) = antiderivative_tables(alpha, max_pow);
            let mut g_total = Poly::zero();
            let mut e_total = Scalar::zero();
            for (a, c) in poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                g_total = &g_total + &g_tab[a].scale(c);
                e_total += &(c * &e_tab[a]);
            }
            if !g_total.is_zero() {
                gauss_terms.push((alpha.clone(), g_total));
            }
            if !e_total.is_zero() {
                erf_terms.push((alpha.clone(), Poly::constant(e_total.clone())));
                free = &free + &Poly::constant(e_total);
            }
        }
        ExtFunc::from_parts(PolyGauss::from_terms(gauss_terms), erf_terms, free)
    }

    /// Exact `∫ f·g` over the whole line.
    pub fn l2_inner(&self, other: &PolyGauss) -> Scalar {
        (self * other).moment(0)
    }

    pub fn l2_norm_sq(&self) -> Scalar {
        self.l2_inner(self)
    }

    /// Decay classification of the tail integrals `∫_{|q|}^∞ t^ell f(±t) dt`:
    /// always exponential for a nonzero PolyGauss, with leading envelope
    /// `|q|^{ell+d-1} e^{-α_min q²}` taken from the slowest width `α_min`
    /// and the degree `d` of its polynomial factor.
    pub fn tail_upper_bound(&self, ell: usize) -> TailBound {
        match self.terms.first() {
            None => TailBound::Zero,
            Some((alpha, poly)) => TailBound::Exponential {
                alpha: alpha.clone(),
                power: ell as i64 + poly.degree() as i64 - 1,
            },
        }
    }
}

impl std::ops::Add for &PolyGauss {
    type Output = PolyGauss;
    fn add(self, rhs: &PolyGauss) -> PolyGauss {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        PolyGauss::from_terms(terms)
    }
}

impl std::ops::Sub for &PolyGauss {
    type Output = PolyGauss;
    fn sub(self, rhs: &PolyGauss) -> PolyGauss {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &PolyGauss {
    type Output = PolyGauss;
    fn neg(self) -> PolyGauss {
        PolyGauss {
            terms: self.terms.iter().map(|(a, p)| (a.clone(), -p)).collect(),
        }
    }
}

impl std::ops::Neg for PolyGauss {
    type Output = PolyGauss;
    fn neg(self) -> PolyGauss {
        -&self
    }
}

impl std::ops::Mul for &PolyGauss {
    type Output = PolyGauss;
    fn mul(self, rhs: &PolyGauss) -> PolyGauss {
        let mut terms = Vec::new();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                terms.push((a + b, p * q));
            }
        }
        PolyGauss::from_terms(terms)
    }
}

impl fmt::Display for PolyGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (alpha, poly)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let p = poly.to_string_var("q");
            if p == "1" {
                write!(f, "{}", exp_string(alpha))?;
            } else {
                write!(f, "({})*{}", p, exp_string(alpha))?;
            }
        }
        Ok(())
    }
}

impl Serialize for PolyGauss {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Tail-decay classification of `∫_{|q|}^∞ t^ell f(±t) dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailBound {
    /// The zero function: no tail at all.
    Zero,
    /// Envelope `C·|q|^power·exp(-alpha·q²)` for large `|q|`.
    Exponential { alpha: BigRational, power: i64 },
}

impl TailBound {
    /// Exponential decay beats every polynomial decay requirement
    /// `|q|^{-p}`, as does an identically zero tail.
    pub fn beats_power_decay(&self, _required_power: i64) -> bool {
        true
    }

    pub fn describe(&self) -> String {
        match self {
            TailBound::Zero => "zero".to_string(),
            TailBound::Exponential { alpha, power } => {
                format!("|q|^{}*{}", power, exp_string(alpha))
            }
        }
    }
}

impl fmt::Display for TailBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl Serialize for TailBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.describe())
    }
}

/// Element of the extended class reached by antiderivatives and operator
/// images: a PolyGauss part, terms `S(q)·erf(√α·q)`, and a free polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExtFunc {
    gauss: PolyGauss,
    erf_terms: Vec<(BigRational, Poly)>,
    free: Poly,
}

impl ExtFunc {
    pub fn zero() -> Self {
        ExtFunc::default()
    }

    pub fn from_polygauss(gauss: PolyGauss) -> Self {
        ExtFunc {
            gauss,
            erf_terms: Vec::new(),
            free: Poly::zero(),
        }
    }

    pub fn from_parts(
        gauss: PolyGauss,
        erf_terms: Vec<(BigRational, Poly)>,
        free: Poly,
    ) -> Self {
        ExtFunc {
            gauss,
            erf_terms: merge_erf(erf_terms),
            free,
        }
    }

    pub fn gauss(&self) -> &PolyGauss {
        &self.gauss
    }

    pub fn erf_terms(&self) -> &[(BigRational, Poly)] {
        &self.erf_terms
    }

    pub fn free_part(&self) -> &Poly {
        &self.free
    }

    pub fn is_zero(&self) -> bool {
        self.gauss.is_zero() && self.erf_terms.is_empty() && self.free.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> ExtFunc {
        ExtFunc::from_parts(
            self.gauss.scale(c),
            self.erf_terms
                .iter()
                .map(|(a, p)| (a.clone(), p.scale(c)))
                .collect(),
            self.free.scale(c),
        )
    }

    /// Multiplication by `q^k`.
    pub fn mul_xpow(&self, k: usize) -> ExtFunc {
        ExtFunc {
            gauss: self.gauss.mul_xpow(k),
            erf_terms: self
                .erf_terms
                .iter()
                .map(|(a, p)| (a.clone(), p.mul_xpow(k)))
                .collect(),
            free: self.free.mul_xpow(k),
        }
    }

    /// Add a bare polynomial to the free part.
    pub fn add_free(&self, p: &Poly) -> ExtFunc {
        ExtFunc {
            gauss: self.gauss.clone(),
            erf_terms: self.erf_terms.clone(),
            free: &self.free + p,
        }
    }

    /// Symbolic derivative; erf terms feed Gaussian terms through
    /// `d/dq erf(√α q) = (2√α/√π)·e^{-α q²}`.
    pub fn derivative(&self) -> ExtFunc {
        let mut gauss = self.gauss.derivative();
        let mut erf_terms = Vec::new();
        for (alpha, s) in &self.erf_terms {
            let ds = s.derivative();
            if !ds.is_zero() {
                erf_terms.push((alpha.clone(), ds));
            }
            let coeff = &(&Scalar::from_int(2) * &Scalar::sqrt_rational(alpha))
                * &Scalar::pi_quarter_pow(-2);
            gauss = &gauss + &PolyGauss::term(alpha.clone(), s.scale(&coeff));
        }
        ExtFunc::from_parts(gauss, erf_terms, self.free.derivative())
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        let (g, e, u) = self.eval_parts_f64(q);
        g + e + u
    }

    /// `(gauss part, erf part, free part)` at `q`, for sampling output.
    pub fn eval_parts_f64(&self, q: f64) -> (f64, f64, f64) {
        let g = self.gauss.eval_f64(q);
        let e = self
            .erf_terms
            .iter()
            .map(|(a, p)| p.eval_f64(q) * statrs::function::erf::erf(ratio_f64(a).sqrt() * q))
            .sum();
        let u = self.free.eval_f64(q);
        (g, e, u)
    }

    /// Sum of all erf coefficient polynomials.
    pub fn erf_total(&self) -> Poly {
        self.erf_terms
            .iter()
            .fold(Poly::zero(), |acc, (_, p)| &acc + p)
    }

    /// Polynomial the function approaches as `q -> +∞` (Gaussian terms die,
    /// every erf -> +1): `free + Σ S_α`.
    pub fn asymptotic_poly_pos(&self) -> Poly {
        &self.free + &self.erf_total()
    }

    /// Polynomial approached as `q -> -∞` (every erf -> -1): `free - Σ S_α`.
    pub fn asymptotic_poly_neg(&self) -> Poly {
        &self.free - &self.erf_total()
    }

    /// Exact square-integrability certificate. The function is in L² iff the
    /// asymptotic polynomials at both infinities vanish identically, i.e.
    /// `free ≡ 0` and the total erf polynomial `≡ 0`; everything away from
    /// the asymptotic polynomials decays at a Gaussian rate.
    pub fn square_integrability(&self) -> L2Certificate {
        let erf_total = self.erf_total();
        let pass = self.free.is_zero() && erf_total.is_zero();
        L2Certificate {
            pass,
            free: self.free.clone(),
            erf_polys: self
                .erf_terms
                .iter()
                .map(|(a, p)| ErfEntry {
                    alpha: ratio_string(a),
                    poly: p.clone(),
                })
                .collect(),
            erf_total,
            asymptotic_pos: self.asymptotic_poly_pos(),
            asymptotic_neg: self.asymptotic_poly_neg(),
        }
    }

    pub fn is_square_integrable(&self) -> bool {
        self.square_integrability().pass
    }
}

impl std::ops::Add for &ExtFunc {
    type Output = ExtFunc;
    fn add(self, rhs: &ExtFunc) -> ExtFunc {
        let mut erf_terms = self.erf_terms.clone();
        erf_terms.extend(rhs.erf_terms.iter().cloned());
        ExtFunc::from_parts(
            &self.gauss + &rhs.gauss,
            erf_terms,
            &self.free + &rhs.free,
        )
    }
}

impl std::ops::Sub for &ExtFunc {
    type Output = ExtFunc;
    fn sub(self, rhs: &ExtFunc) -> ExtFunc {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &ExtFunc {
    type Output = ExtFunc;
    fn neg(self) -> ExtFunc {
        ExtFunc {
            gauss: -&self.gauss,
            erf_terms: self
                .erf_terms
                .iter()
                .map(|(a, p)| (a.clone(), -p))
                .collect(),
            free: -&self.free,
        }
    }
}

impl std::ops::Neg for ExtFunc {
    type Output = ExtFunc;
    fn neg(self) -> ExtFunc {
        -&self
    }
}

impl fmt::Display for ExtFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.gauss.is_zero() {
            write!(f, "{}", self.gauss)?;
            first = false;
        }
        for (alpha, p) in &self.erf_terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let s = p.to_string_var("q");
            if s == "1" {
                write!(f, "{}", erf_string(alpha))?;
            } else {
                write!(f, "({})*{}", s, erf_string(alpha))?;
            }
        }
        if !self.free.is_zero() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.free.to_string_var("q"))?;
        }
        Ok(())
    }
}

impl Serialize for ExtFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Exact square-integrability certificate for an [`ExtFunc`].
#[derive(Clone, Debug, Serialize)]
pub struct L2Certificate {
    pub pass: bool,
    /// The free polynomial part; must vanish for L².
    pub free: Poly,
    /// Per-width erf coefficient polynomials `S_α`.
    pub erf_polys: Vec<ErfEntry>,
    /// `Σ_α S_α`; must vanish for L².
    pub erf_total: Poly,
    /// Polynomial limit shape at `q -> +∞`.
    pub asymptotic_pos: Poly,
    /// Polynomial limit shape at `q -> -∞`.
    pub asymptotic_neg: Poly,
}

/// One erf coefficient polynomial, tagged by its width as a rational string.
#[derive(Clone, Debug, Serialize)]
pub struct ErfEntry {
    pub alpha: String,
    pub poly: Poly,
}

/// Exact Gaussian moment `∫ q^power · exp(-α q²) dq`:
/// zero for odd power, `(2s-1)!!·(2α)^{-s}·√(π/α)` for `power = 2s`.
pub fn gauss_moment(alpha: &BigRational, power: usize) -> Scalar {
    if power % 2 == 1 {
        return Scalar::zero();
    }
    let s = power / 2;
    let dfact = BigRational::from_integer(BigInt::from(double_factorial_odd(s as u64)));
    let two_alpha = alpha + alpha;
    let mut pow = BigRational::one();
    for _ in 0..s {
        pow = &pow * &two_alpha;
    }
    let rational_part = dfact / pow;
    &Scalar::from_rational(rational_part) * &sqrt_pi_over(alpha)
}

/// `√(π/α)` as an exact Scalar.
fn sqrt_pi_over(alpha: &BigRational) -> Scalar {
    &Scalar::sqrt_rational(&alpha.recip()) * &Scalar::pi_quarter_pow(2)
}

/// Tables of `(G_a, e_a)` for `a = 0..=max_pow` such that
/// `∫_{-∞}^q t^a e^{-α t²} dt = G_a(q)·e^{-α q²} + e_a·(1 + erf(√α q))`.
fn antiderivative_tables(alpha: &BigRational, max_pow: usize) -> (Vec<Poly>, Vec<Scalar>) {
    let inv2a = (alpha + alpha).recip();
    let mut g = Vec::with_capacity(max_pow + 1);
    let mut e = Vec::with_capacity(max_pow + 1);
    g.push(Poly::zero());
    e.push(sqrt_pi_over(alpha).scale_rational(&BigRational::new(1.into(), 2.into())));
    if max_pow >= 1 {
        g.push(Poly::constant(Scalar::from_rational(-&inv2a)));
        e.push(Scalar::zero());
    }
    for a in 2..=max_pow {
        let factor = Scalar::from_rational(&inv2a * BigRational::from_integer(BigInt::from(a - 1)));
        let lead = Poly::monomial(a - 1, Scalar::from_rational(-&inv2a));
        let ga: Poly = &lead + &g[a - 2].scale(&factor);
        let ea = &e[a - 2] * &factor;
        g.push(ga);
        e.push(ea);
    }
    (g, e)
}

fn merge_erf(terms: Vec<(BigRational, Poly)>) -> Vec<(BigRational, Poly)> {
    let mut sorted = terms;
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigRational, Poly)> = Vec::new();
    for (alpha, poly) in sorted {
        assert!(
            alpha.is_positive(),
            "erf width must be strictly positive, got {alpha}"
        );
        match merged.last_mut() {
            Some((a, p)) if *a == alpha => *p = &*p + &poly,
            _ => merged.push((alpha, poly)),
        }
    }
    merged.retain(|(_, p)| !p.is_zero());
    merged
}

pub(crate) fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

pub(crate) fn ratio_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn exp_string(alpha: &BigRational) -> String {
    let one = BigInt::one();
    if alpha.denom() == &one {
        if alpha.numer() == &one {
            "exp(-q^2)".to_string()
        } else {
            format!("exp(-{}*q^2)", alpha.numer())
        }
    } else if alpha.numer() == &one {
        format!("exp(-q^2/{})", alpha.denom())
    } else {
        format!("exp(-({})*q^2)", ratio_string(alpha))
    }
}

fn erf_string(alpha: &BigRational) -> String {
    let one = BigInt::one();
    if alpha.numer() == &one && alpha.denom() == &one {
        "erf(q)".to_string()
    } else if alpha.numer() == &one {
        format!("erf(q/sqrt({}))", alpha.denom())
    } else if alpha.denom() == &one {
        format!("erf(sqrt({})*q)", alpha.numer())
    } else {
        format!("erf(sqrt({})*q)", ratio_string(alpha))
    }
}
