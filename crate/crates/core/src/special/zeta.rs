//! Riemann zeta function by Euler-Maclaurin summation.

use std::f64::consts::PI;

use crate::{Error, Result, C64};

// B_{2j} / (2j)! for j = 1..12
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43867.0 / 5_109_094_217_170_944_000.0,
    -174611.0 / 802_857_662_698_291_200_000.0,
    77683.0 / 1_758_003_330_442_297_344_000_000.0 * 1.0,
    -236_364_091.0 / 1_824_676_401_483_563_621_120_000_000.0 * 1.0,
];

/// `zeta(s)` for any `s != 1`. The cut-off grows with `|s|` so the tail series stays
/// geometrically convergent.
pub fn zeta(s: C64) -> Result<C64> {
    if (s - 1.0).norm() < 1e-14 {
        return Err(Error::Pole { func: "zeta", at: format!("{}", s) });
    }
    let n = (10.0f64).max((s.norm() / 2.0).ceil() + 10.0) as usize;
    let nf = n as f64;
    let mut acc = C64::new(0.0, 0.0);
    for k in (1..n).rev() {
        acc += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * nf.ln()).exp();
    acc += n_pow * nf / (s - 1.0) + n_pow * 0.5;
    // rising factorial s (s+1) ... (s+2j-2) times N^{-s-2j+1}
    let mut rising = s;
    let mut npow = n_pow / nf;
    for (j, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = rising * npow * *c;
        acc += term;
        if term.norm() < 1e-18 * acc.norm() {
            break;
        }
        let a = s + (2 * j + 1) as f64;
        let b = s + (2 * j + 2) as f64;
        rising = rising * a * b;
        npow /= nf * nf;
    }
    Ok(acc)
}

pub fn zeta_real(x: f64) -> Result<f64> {
    Ok(zeta(C64::new(x, 0.0))?.re)
}

/// Completed zeta `pi^{-s/2} Gamma(s/2) zeta(s)`, symmetric under `s -> 1 - s`.
pub fn xi(s: C64) -> Result<C64> {
    let g = super::gamma::gamma(s * 0.5)?;
    Ok((-0.5 * s * PI.ln()).exp() * g * zeta(s)?)
}
