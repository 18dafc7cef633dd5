//! Exact algebra and certificates for the integral operators with kernel
//! `(q+q')^n (q-q')^(m-1) sgn(q-q')` acting on polynomial-Gaussian functions.
//!
//! The crate is organized in layers:
//!
//! * [`scalar`] closes the constant field: finite rational combinations of
//!   `sqrt(r)` (squarefree integer `r`) and quarter powers of pi. Every
//!   integral this crate evaluates lands in this field, so pass/fail
//!   certificates carry no floating-point doubt.
//! * [`poly`] and [`polygauss`] build dense polynomials over [`scalar::Scalar`]
//!   and finite sums `P(q) exp(-alpha q^2)`, with exact moments,
//!   antiderivatives, inner products, and tail envelopes. [`polygauss::ExtFunc`]
//!   is the closed image class (Gaussian part + erf polynomials + free
//!   polynomial) with an exact square-integrability certificate.
//! * [`hermite`] provides Hermite polynomials and normalized Hermite functions.
//! * [`moments`] computes the Hermite-function moment coefficients by
//!   recurrence, their integer polynomial factorizations, and log-log
//!   asymptotic exponent fits.
//! * [`basicvec`] constructs the determinant vectors whose first N+1 moments
//!   vanish, with an integer-minor reduction as an independent exact route.
//! * [`operator`] expands the kernel and applies the operators, bundling
//!   moment, square-integrability, and tail certificates into a domain report.
//! * [`series`] forms partial sums of the harmonic-oscillator operator series
//!   and checks domain nesting across operator orders.
//! * [`completeness`] runs the completeness diagnostics: implied coefficient
//!   ratios, bordered-determinant growth in the free index, root polynomials,
//!   and the annihilator nonsingularity test.
//! * [`linalg`] and [`quad`] are shared utilities: exact and floating
//!   determinants, and adaptive quadrature for numeric cross-checks.

pub mod basicvec;
pub mod completeness;
pub mod hermite;
pub mod linalg;
pub mod moments;
pub mod operator;
pub mod poly;
pub mod polygauss;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod series;

pub use poly::{Parity, Poly};
pub use polygauss::{ExtFunc, L2Certificate, PolyGauss, TailBound};
pub use report::{Check, VerificationReport};
pub use scalar::Scalar;
