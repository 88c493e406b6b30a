//! `x`-derivatives of `Gamma((x+iy)/2) Gamma((x-iy)/2)` against their Stirling main term.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::gamma;
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StirlingPair {
    pub exact: f64,
    pub asymptotic: f64,
    pub ratio: f64,
}

/// `2 pi e^{-x} ((x^2+y^2)/4)^{(x-1)/2} exp(-|y| atan2(|y|, x))`; the angle equals
/// `arctan(|y|/x) + delta(x)` with `delta = pi` for negative `x`.
pub fn stirling_main_term(x: f64, y: f64) -> f64 {
    let ay = y.abs();
    2.0 * PI * (-x).exp() * ((x * x + y * y) / 4.0).powf((x - 1.0) / 2.0) * (-ay * ay.atan2(x)).exp()
}

fn gamma_pair(x: f64, y: f64) -> Result<f64> {
    let a = gamma(C64::new(x / 2.0, y / 2.0))?;
    let b = gamma(C64::new(x / 2.0, -y / 2.0))?;
    Ok((a * b).re)
}

fn derivative(f: impl Fn(f64) -> Result<f64>, x: f64, ell: u32) -> Result<f64> {
    match ell {
        0 => f(x),
        1 => {
            let h = 1e-3;
            Ok((-f(x + 2.0 * h)? + 8.0 * f(x + h)? - 8.0 * f(x - h)? + f(x - 2.0 * h)?) / (12.0 * h))
        }
        2 => {
            let h = 1e-3;
            Ok((-f(x + 2.0 * h)? + 16.0 * f(x + h)? - 30.0 * f(x)? + 16.0 * f(x - h)? - f(x - 2.0 * h)?)
                / (12.0 * h * h))
        }
        3 => {
            let h = 1e-2;
            Ok((f(x + 2.0 * h)? - 2.0 * f(x + h)? + 2.0 * f(x - h)? - f(x - 2.0 * h)?) / (2.0 * h * h * h))
        }
        _ => Err(Error::invalid(format!("derivative order {ell} not supported (max 3)"))),
    }
}

/// Exact value (finite differences of the complex gamma function) and the asymptotic main
/// term, both differentiated `ell` times in `x`.
pub fn stirling_pair(x: f64, y: f64, ell: u32) -> Result<StirlingPair> {
    if !(-0.5..=0.5).contains(&x) {
        return Err(Error::precondition(format!("x must lie in [-1/2, 1/2], got {x}")));
    }
    if y.abs() < 10.0 {
        return Err(Error::precondition(format!("the asymptotic regime needs |y| >= 10, got {y}")));
    }
    let exact = derivative(|u| gamma_pair(u, y), x, ell)?;
    let asymptotic = derivative(|u| Ok(stirling_main_term(u, y)), x, ell)?;
    Ok(StirlingPair { exact, asymptotic, ratio: exact / asymptotic })
}
