//! Adaptive Simpson quadrature, used by tests and reports as a numeric
//! cross-check that is independent of the exact algebra.

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let c = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fc = f(c);
    let whole = simpson(a, b, fa, fc, fb);
    recurse(f, a, b, fa, fc, fb, whole, tol, 50)
}

/// Integral of `f` over the whole real line for integrands with Gaussian
/// decay `exp(-alpha_min q^2)`: truncates where the envelope is far below
/// `tol` and integrates the remaining finite window.
pub fn integrate_gaussian_decay<F: Fn(f64) -> f64>(f: &F, alpha_min: f64, tol: f64) -> f64 {
    assert!(alpha_min > 0.0, "need strictly positive Gaussian width");
    // exp(-alpha R^2) <= 1e-20 * tol gives a generous truncation radius.
    let r = ((46.0 - tol.ln().min(0.0)) / alpha_min).sqrt().max(8.0);
    adaptive_simpson(f, -r, 0.0, 0.5 * tol) + adaptive_simpson(f, 0.0, r, 0.5 * tol)
}

fn simpson(a: f64, b: f64, fa: f64, fc: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fc + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fc: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let c = 0.5 * (a + b);
    let d = 0.5 * (a + c);
    let e = 0.5 * (c + b);
    let fd = f(d);
    let fe = f(e);
    let left = simpson(a, c, fa, fd, fc);
    let right = simpson(c, b, fc, fe, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        recurse(f, a, c, fa, fd, fc, left, 0.5 * tol, depth - 1)
            + recurse(f, c, b, fc, fe, fb, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let f = |x: f64| x * x * x - 2.0 * x + 1.0;
        let got = adaptive_simpson(&f, 0.0, 2.0, 1e-12);
        assert!((got - 2.0).abs() < 1e-10, "got {got}");
    }

    #[test]
    fn gaussian_integral() {
        let f = |x: f64| (-x * x).exp();
        let got = integrate_gaussian_decay(&f, 1.0, 1e-12);
        assert!((got - std::f64::consts::PI.sqrt()).abs() < 1e-10, "got {got}");
    }

    #[test]
    fn gaussian_second_moment() {
        // int q^2 exp(-q^2/2) dq = sqrt(2 pi)
        let f = |x: f64| x * x * (-0.5 * x * x).exp();
        let want = (2.0 * std::f64::consts::PI).sqrt();
        let got = integrate_gaussian_decay(&f, 0.5, 1e-12);
        assert!((got - want).abs() < 1e-9, "got {got} want {want}");
    }
}
