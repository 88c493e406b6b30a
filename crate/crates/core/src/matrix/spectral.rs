//! Spectral parameters `nu`, the exponent matrix `b`, the power function `I_nu` and the
//! Langlands parameters.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{iwasawa_decompose, IwasawaCoords};
use crate::{Error, Result, C64};

/// `b_{i,j}` (1-based): `i j` when `i + j <= n`, `(n - i)(n - j)` otherwise.
pub fn b_entry(n: usize, i: usize, j: usize) -> i64 {
    let (n, i, j) = (n as i64, i as i64, j as i64);
    if i + j <= n {
        debug_assert!(i + j < n || i * j == (n - i) * (n - j));
        i * j
    } else {
        (n - i) * (n - j)
    }
}

pub fn b_matrix(n: usize) -> DMatrix<i64> {
    DMatrix::from_fn(n - 1, n - 1, |i, j| b_entry(n, i + 1, j + 1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    pub n: usize,
    pub nu: Vec<C64>,
    pub alpha: Vec<C64>,
}

impl SpectralParams {
    pub fn new(n: usize, nu: Vec<C64>) -> Result<Self> {
        let alpha = langlands_params(n, &nu)?;
        Ok(Self { n, nu, alpha })
    }

    /// Recover `nu` from Langlands parameters (which must sum to zero).
    pub fn from_langlands(alpha: &[C64]) -> Result<Self> {
        let n = alpha.len();
        if n < 2 {
            return Err(Error::Dimension("need at least two Langlands parameters".into()));
        }
        let sum: C64 = alpha.iter().sum();
        if sum.norm() > 1e-9 * (1.0 + alpha.iter().map(|a| a.norm()).sum::<f64>()) {
            return Err(Error::invalid(format!("Langlands parameters must sum to zero, got {sum}")));
        }
        let nf = n as f64;
        // big_b[i] = B_{i+1}
        let mut big_b = vec![C64::new(0.0, 0.0); n - 1];
        big_b[n - 2] = alpha[0] + (nf - 1.0) / 2.0;
        for i in 2..n {
            let shift = (2.0 * i as f64 - nf - 1.0) / 2.0;
            big_b[n - i - 1] = big_b[n - i] + alpha[i - 1] - shift;
        }
        let b = b_matrix(n).map(|v| v as f64);
        let binv = b.try_inverse().ok_or_else(|| Error::invalid("b matrix is singular"))?;
        let nu: Vec<C64> =
            (0..n - 1).map(|i| (0..n - 1).map(|j| big_b[j] * binv[(i, j)]).sum()).collect();
        Self::new(n, nu)
    }

    /// `B_i(nu) = sum_j b_{i,j} nu_j`, 1-based `i`.
    pub fn big_b(&self, i: usize) -> C64 {
        (1..self.n).map(|j| self.nu[j - 1] * b_entry(self.n, i, j) as f64).sum()
    }

    /// Shift every `nu_j` by `eps`.
    pub fn shifted(&self, eps: f64) -> Self {
        Self::new(self.n, self.nu.iter().map(|v| v + eps).collect()).expect("same length")
    }
}

pub fn langlands_params(n: usize, nu: &[C64]) -> Result<Vec<C64>> {
    if n < 2 || nu.len() != n - 1 {
        return Err(Error::Dimension(format!("degree {n} needs {} spectral parameters, got {}", n.max(1) - 1, nu.len())));
    }
    let big_b = |i: usize| -> C64 { (1..n).map(|j| nu[j - 1] * b_entry(n, i, j) as f64).sum() };
    let nf = n as f64;
    let mut alpha = Vec::with_capacity(n);
    alpha.push(big_b(n - 1) + (1.0 - nf) / 2.0);
    for i in 2..n {
        alpha.push(big_b(n - i) - big_b(n - i + 1) + (2.0 * i as f64 - nf - 1.0) / 2.0);
    }
    alpha.push(-big_b(1) + (nf - 1.0) / 2.0);
    Ok(alpha)
}

/// `I_nu(z) = prod_{i,j} y_i^{b_{i,j} nu_j}`.
pub fn i_nu(z: &IwasawaCoords, p: &SpectralParams) -> Result<C64> {
    if z.k != p.n {
        return Err(Error::Dimension(format!("coordinates on GL({}) but parameters for GL({})", z.k, p.n)));
    }
    let mut log = C64::new(0.0, 0.0);
    for (idx, y) in z.y.iter().enumerate() {
        log += p.big_b(idx + 1) * y.ln();
    }
    Ok(log.exp())
}

pub fn i_nu_of_matrix(g: &DMatrix<f64>, p: &SpectralParams) -> Result<C64> {
    i_nu(&iwasawa_decompose(g)?, p)
}
