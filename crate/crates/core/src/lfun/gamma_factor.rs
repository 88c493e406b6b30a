//! The archimedean factor `gamma(s, f x f~) = pi^{-n^2 s/2} prod_{i,j} Gamma((s + alpha_i + conj(alpha_j))/2)`.

use std::f64::consts::PI;

use super::CuspFormData;
use crate::special::ln_gamma;
use crate::{Result, C64};

/// `log gamma(s, f x f~)`, imaginary part modulo `2 pi`.
pub fn ln_gamma_factor_rs(fd: &CuspFormData, s: C64) -> Result<C64> {
    let n2 = (fd.n * fd.n) as f64;
    let mut acc = -s * (n2 / 2.0 * PI.ln());
    for d in fd.rs_shifts() {
        acc += ln_gamma((s + d) * 0.5)?;
    }
    Ok(acc)
}

pub fn gamma_factor_rs(fd: &CuspFormData, s: C64) -> Result<C64> {
    Ok(ln_gamma_factor_rs(fd, s)?.exp())
}
