//! The Maass-Selberg relation for truncated Eisenstein series induced from `f`, its limit on
//! the diagonal, the zero-free-region arithmetic and the `(1, .., 1, p)` Fourier coefficient.

use serde::{Deserialize, Serialize};

use super::ratio::{c_ratio, c_ratio_derivative};
use super::CuspFormData;
use crate::{Error, Result, C64};

/// Distance below which `r = conj(s)` or `r + conj(s) = 1` counts as degenerate.
const DEGENERATE_TOL: f64 = 1e-12;

/// `<E_A(., f; r), E_A(., f; s)>` from its four-term closed form.
pub fn maass_selberg(fd: &CuspFormData, a: f64, r: C64, s: C64) -> Result<C64> {
    check_truncation(a)?;
    let sb = s.conj();
    if (r - sb).norm() < DEGENERATE_TOL || (r + sb - 1.0).norm() < DEGENERATE_TOL {
        return Err(Error::precondition(format!("degenerate parameters r = {r}, s = {s}")));
    }
    let p = fd.petersson_norm * fd.petersson_norm;
    let n = fd.n as f64;
    let la = a.ln();
    let pow = |z: C64| (z * (n * la)).exp();
    let cr = c_ratio(fd, r)?;
    let cs = c_ratio(fd, s)?.conj();
    let e1 = r + sb - 1.0;
    let e2 = r - sb;
    Ok(p * (pow(e1) / e1 + cs * pow(e2) / e2 - cr * pow(e2).inv() / e2 - cr * cs * pow(e1).inv() / e1))
}

/// The diagonal value at `s = 1/2 + it`:
/// `P [conj(c) A^{2nit}/(2it) - c A^{-2nit}/(2it) - c'/c + 2n log A]`, `P = <f,f>^2`.
pub fn maass_selberg_limit(fd: &CuspFormData, a: f64, t: f64) -> Result<C64> {
    check_truncation(a)?;
    if t == 0.0 {
        return Err(Error::precondition("the diagonal formula needs t != 0"));
    }
    let s = C64::new(0.5, t);
    let c = c_ratio(fd, s)?;
    let dc = c_ratio_derivative(fd, s, 2e-3)?;
    let n = fd.n as f64;
    let p = fd.petersson_norm * fd.petersson_norm;
    let phase = C64::from_polar(1.0, 2.0 * n * t * a.ln());
    let two_it = C64::new(0.0, 2.0 * t);
    Ok(p * (c.conj() * phase / two_it - c * phase.conj() / two_it - dc / c + 2.0 * n * a.ln()))
}

fn check_truncation(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::invalid(format!("truncation parameter A must be positive, got {a}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonLimitReport {
    pub t: f64,
    pub a: f64,
    pub eps: f64,
    pub limit: C64,
    pub at_eps: C64,
    pub at_half_eps: C64,
    /// `log2(|v(eps) - limit| / |v(eps/2) - limit|)`; 1 for first-order convergence.
    pub slope: f64,
}

/// Evaluate the relation at `r = s + eps` and `r = s + eps/2` with `s = 1/2 + it` and measure
/// the convergence order towards the diagonal formula.
pub fn epsilon_limit(fd: &CuspFormData, a: f64, t: f64, eps: f64) -> Result<EpsilonLimitReport> {
    if !(eps > 0.0) {
        return Err(Error::invalid(format!("eps must be positive, got {eps}")));
    }
    let s = C64::new(0.5, t);
    let limit = maass_selberg_limit(fd, a, t)?;
    let at_eps = maass_selberg(fd, a, s + eps, s)?;
    let at_half_eps = maass_selberg(fd, a, s + eps / 2.0, s)?;
    let slope = ((at_eps - limit).norm() / (at_half_eps - limit).norm()).log2();
    Ok(EpsilonLimitReport { t, a, eps, limit, at_eps, at_half_eps, slope })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroFreeRegion {
    /// `c = lower / (2 deriv)`.
    pub c: f64,
    /// `c / log(|t| + 2)^5`: no zero with `1 - width < sigma <= 1` at height `t`.
    pub width: f64,
    /// The power of `log(|t| + 2)`: 3 from the lower bound plus 2 from the derivative.
    pub exponent: u32,
}

/// Mean value theorem glue: from `|L(1+it)| >= lower / log^3` and `|L'| <= deriv log^2`, a zero
/// at `sigma + it` forces `1 - sigma >= lower / (deriv log^5)`; half of that is zero-free.
pub fn zero_free_region(t: f64, lower: f64, deriv: f64) -> Result<ZeroFreeRegion> {
    if !(lower > 0.0 && deriv > 0.0) {
        return Err(Error::invalid(format!("constants must be positive, got {lower} and {deriv}")));
    }
    if !t.is_finite() {
        return Err(Error::invalid("t must be finite"));
    }
    const LOWER_POWER: u32 = 3;
    const DERIV_POWER: u32 = 2;
    let exponent = LOWER_POWER + DERIV_POWER;
    let c = lower / (2.0 * deriv);
    Ok(ZeroFreeRegion { c, width: c / (t.abs() + 2.0).ln().powi(exponent as i32), exponent })
}

/// `c_n conj(lambda(p) eta_{nit}(p)) p^{-(2n-1)/2} / L(1 + 2int)`, the arithmetic factor of the
/// `(1, .., 1, p)` Fourier coefficient of `E(z, f; 1/2 + it)`.
pub fn fourier_coeff_a1(fd: &CuspFormData, p: u64, t: f64, l_value: C64, c_n: f64) -> Result<C64> {
    if l_value.norm() == 0.0 {
        return Err(Error::invalid("L(1 + 2int) must be nonzero"));
    }
    let lambda = fd.hecke_at(p)?;
    let eta = 2.0 * (fd.n as f64 * t * (p as f64).ln()).cos();
    let n = fd.n as f64;
    Ok(c_n * (lambda * eta).conj() * (p as f64).powf(-(2.0 * n - 1.0) / 2.0) / l_value)
}
