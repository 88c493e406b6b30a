//! Complex gamma function.
//!
//! Lanczos approximation with Pugh's `r = 10.900511` coefficients near the real axis, the
//! Stirling series (after an upward shift) further out, reflection for `Re z < 1/2`.

use std::f64::consts::PI;

use crate::{Error, Result, C64};

const LANCZOS_R: f64 = 10.900511;
const LANCZOS_D: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057_5e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];
// ln(2 sqrt(e / pi))
const LN_TWO_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

fn check_pole(z: C64) -> Result<()> {
    if z.re <= 0.5 && z.im.abs() < 1e-12 {
        let k = z.re.round();
        if k <= 0.0 && (z.re - k).abs() < 1e-12 {
            return Err(Error::Pole { func: "gamma", at: format!("{}", z) });
        }
    }
    Ok(())
}

// B_{2k} / (2k (2k - 1)), k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn ln_gamma_stirling(z: C64) -> C64 {
    // Lanczos loses a few digits once |Im z| grows; shift to |w| >= 15 and sum the series
    let mut w = z;
    let mut shift = C64::new(1.0, 0.0);
    while w.norm() < 15.0 {
        shift *= w;
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift.ln()
}

fn ln_gamma_right(z: C64) -> C64 {
    if z.im.abs() > 3.0 || z.norm() > 12.0 {
        return ln_gamma_stirling(z);
    }
    let mut s = C64::new(LANCZOS_D[0], 0.0);
    for (k, d) in LANCZOS_D.iter().enumerate().skip(1) {
        s += *d / (z + (k as f64 - 1.0));
    }
    let t = z + (LANCZOS_R - 0.5);
    LN_TWO_SQRT_E_OVER_PI + (z - 0.5) * (t.ln() - 1.0) + s.ln()
}

/// `ln Gamma(z)`; the imaginary part is determined only modulo `2 pi`.
pub fn ln_gamma(z: C64) -> Result<C64> {
    check_pole(z)?;
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        let s = (z * PI).sin();
        Ok(C64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(C64::new(1.0, 0.0) - z))
    }
}

pub fn gamma(z: C64) -> Result<C64> {
    check_pole(z)?;
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z).exp())
    } else {
        let s = (z * PI).sin();
        Ok(PI / (s * ln_gamma_right(C64::new(1.0, 0.0) - z).exp()))
    }
}

pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(C64::new(x, 0.0))?.re)
}

/// `1 / Gamma(z)`, entire, so it is defined at the poles of `Gamma`.
pub fn recip_gamma(z: C64) -> C64 {
    match gamma(z) {
        Ok(g) => 1.0 / g,
        Err(_) => C64::new(0.0, 0.0),
    }
}
