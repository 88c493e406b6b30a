//! `(1 / 2 pi i) int_{(2)} x^w / (w (w + 1)) dw`, which is `1 - 1/x` for `x >= 1` and `0` below.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::quad::adaptive;
use crate::{Error, Result, C64};

pub const DEFAULT_TRUNCATION: f64 = 1e5;

const LINE: f64 = 2.0;
const CHUNK: f64 = 100.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MellinCutoffReport {
    pub x: f64,
    pub value: f64,
    pub closed_form: f64,
    pub error: f64,
    pub truncation: f64,
    /// Leading-order contribution of `|Im w| > truncation`, added to `value`.
    pub tail_correction: f64,
    /// Bound on what the correction leaves out.
    pub tail_bound: f64,
    /// Quadrature error estimate on the truncated line.
    pub quadrature_error: f64,
}

pub fn cutoff_closed_form(x: f64) -> f64 {
    if x >= 1.0 {
        1.0 - 1.0 / x
    } else {
        0.0
    }
}

/// `int_z^inf sin(t) / t dt` for `z >= 0`.
fn sine_tail(z: f64) -> Result<f64> {
    if z >= 30.0 {
        let (z2, z4) = (z * z, z.powi(4));
        let f = (1.0 - 2.0 / z2 + 24.0 / z4) / z;
        let g = (1.0 - 6.0 / z2 + 120.0 / z4) / z2;
        return Ok(f * z.cos() + g * z.sin());
    }
    let si = adaptive(|t| C64::new(if t == 0.0 { 1.0 } else { t.sin() / t }, 0.0), 0.0, z, 1e-15, 1e-13, 200)?;
    Ok(FRAC_PI_2 - si.value.re)
}

pub fn mellin_cutoff(x: f64) -> Result<MellinCutoffReport> {
    mellin_cutoff_with(x, DEFAULT_TRUNCATION)
}

/// The contour integral on `Re w = 2` over `|Im w| <= truncation`, plus the analytic tail of
/// the leading term `-x^w / v^2` of the integrand.
pub fn mellin_cutoff_with(x: f64, truncation: f64) -> Result<MellinCutoffReport> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid(format!("x must be positive, got {x}")));
    }
    if !(truncation >= 10.0) {
        return Err(Error::invalid(format!("truncation {truncation} is too small")));
    }
    let l = x.ln();
    let xl = x.powf(LINE);
    let f = |v: f64| {
        let w = C64::new(LINE, v);
        C64::from_polar(xl, v * l) / (w * (w + 1.0))
    };
    // the integrand at -v is the conjugate, so integrate v > 0 and double the real part
    let mut sum = 0.0;
    let mut qerr = 0.0;
    let mut a = 0.0;
    while a < truncation {
        let b = (a + CHUNK).min(truncation);
        let part = adaptive(f, a, b, 1e-12 * xl.max(1.0), 1e-12, 2000)?;
        sum += part.value.re;
        qerr += part.error;
        a = b;
    }
    let la = l.abs();
    let cos_tail = if la == 0.0 {
        1.0 / truncation
    } else {
        (la * truncation).cos() / truncation - la * sine_tail(la * truncation)?
    };
    let tail_correction = -xl * cos_tail / PI;
    let value = sum / PI + tail_correction;
    let closed_form = cutoff_closed_form(x);
    Ok(MellinCutoffReport {
        x,
        value,
        closed_form,
        error: (value - closed_form).abs(),
        truncation,
        tail_correction,
        tail_bound: 3.0 * xl / (PI * truncation * truncation),
        quadrature_error: qerr / PI,
    })
}
