//! Modified Bessel function `K_mu(w)` of complex order, for `Re w > 0`, from
//! `K_mu(w) = int_0^inf exp(-w cosh t) cosh(mu t) dt`.

use std::f64::consts::PI;

use crate::quad::{adaptive, QuadratureSpec};
use crate::{Error, Result, C64};

/// `K_mu(w)` for complex `mu` and `Re w > 0`.
pub fn bessel_k(mu: C64, w: C64, rel_tol: f64, max_subdivisions: usize) -> Result<C64> {
    if !(w.re > 0.0) {
        return Err(Error::precondition(format!("K-Bessel integral needs Re(w) > 0, got {w}")));
    }
    let a = mu.re.abs();
    let x = w.re;
    // log of the integrand envelope exp(-x cosh t + a t)
    let env = |t: f64| -x * t.cosh() + a * t;
    let t_peak = (a / x).asinh();
    let peak = env(t_peak);
    let mut hi = t_peak + 1.0;
    while env(hi) > peak - 46.0 {
        hi = hi * 1.25 + 0.5;
    }
    // rounding floor: terms of size exp(peak) cannot cancel below ~1e-16 of that
    let width = hi.max(1.0);
    let abs_floor = 1e-16 * peak.exp() * width;
    let f = |t: f64| (-w * t.cosh()).exp() * (mu * t).cosh();
    // break at the peak so the adaptive rule sees the bump
    let mut total = C64::new(0.0, 0.0);
    let mut pieces = vec![0.0];
    if t_peak > 0.5 {
        pieces.push(t_peak);
    }
    pieces.push(hi);
    for ab in pieces.windows(2) {
        let r = adaptive(f, ab[0], ab[1], abs_floor, rel_tol * 0.5, max_subdivisions)?;
        total += r.value;
    }
    Ok(total)
}

/// `K_nu(2 pi y)` via the integral `1/2 int_0^inf exp(-pi y (t + 1/t)) t^nu dt / t`, computed
/// in the variable `t = e^u`.
pub fn k_bessel(nu: C64, y: f64, q: &QuadratureSpec) -> Result<C64> {
    if !(y > 0.0) {
        return Err(Error::precondition(format!("K-Bessel needs y > 0, got {y}")));
    }
    bessel_k(nu, C64::new(2.0 * PI * y, 0.0), q.rel_tol, q.max_subdivisions)
}

/// `K*_nu(y; a, b) = 2 (a/b)^{nu/2} K_nu(2 pi y sqrt(ab))`.
pub fn k_star(nu: C64, y: f64, a: f64, b: f64, q: &QuadratureSpec) -> Result<C64> {
    let pref = (nu * 0.5 * (a / b).ln()).exp() * 2.0;
    Ok(pref * k_bessel(nu, y * (a * b).sqrt(), q)?)
}
