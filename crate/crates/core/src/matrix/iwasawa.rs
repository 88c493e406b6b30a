//! Iwasawa coordinates `z = x * diag(y_1 ... y_{k-1}, ..., y_1, 1)` modulo `O(k) * R^x`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IwasawaCoords {
    pub k: usize,
    /// Strictly upper entries `x_{i,j}`, `i < j`, row by row.
    pub x: Vec<f64>,
    /// `y_1 .. y_{k-1}`, all positive.
    pub y: Vec<f64>,
}

fn upper_index(k: usize, i: usize, j: usize) -> usize {
    // rows 0..i contribute (k-1) + (k-2) + ... entries
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

impl IwasawaCoords {
    pub fn new(k: usize, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Dimension(format!("Iwasawa coordinates need k >= 2, got {k}")));
        }
        if x.len() != k * (k - 1) / 2 || y.len() != k - 1 {
            return Err(Error::Dimension(format!(
                "k = {k} needs {} x-entries and {} y-entries, got {} and {}",
                k * (k - 1) / 2,
                k - 1,
                x.len(),
                y.len()
            )));
        }
        if let Some(v) = y.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::invalid(format!("y entries must be positive and finite, got {v}")));
        }
        Ok(Self { k, x, y })
    }

    pub fn identity(k: usize) -> Self {
        Self { k, x: vec![0.0; k * (k - 1) / 2], y: vec![1.0; k - 1] }
    }

    /// Diagonal coordinates (`x = 0`).
    pub fn diagonal(y: Vec<f64>) -> Result<Self> {
        let k = y.len() + 1;
        Self::new(k, vec![0.0; k * (k - 1) / 2], y)
    }

    /// `x_{i,j}` with 0-based `i < j`.
    pub fn x_at(&self, i: usize, j: usize) -> f64 {
        self.x[upper_index(self.k, i, j)]
    }

    /// Diagonal entry `d_j = y_1 ... y_{k-1-j}` (0-based `j`).
    pub fn diag_entry(&self, j: usize) -> f64 {
        self.y[..self.k - 1 - j].iter().product()
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let k = self.k;
        let d: Vec<f64> = (0..k).map(|j| self.diag_entry(j)).collect();
        DMatrix::from_fn(k, k, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => d[j],
            std::cmp::Ordering::Less => self.x_at(i, j) * d[j],
            std::cmp::Ordering::Greater => 0.0,
        })
    }

    /// Largest relative deviation from `other`, over x (absolute, scaled by 1 + |x|) and y.
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let dx = self.x.iter().zip(&other.x).map(|(a, b)| (a - b).abs() / (1.0 + a.abs()));
        let dy = self.y.iter().zip(&other.y).map(|(a, b)| (a - b).abs() / a.abs());
        dx.chain(dy).fold(0.0, f64::max)
    }
}

/// Decompose `g = n * a * q` with `n` unipotent upper, `a` positive diagonal and `q`
/// orthogonal, by Gram-Schmidt on the rows of `g` from the bottom up, then divide out the
/// last diagonal entry.
pub fn iwasawa_decompose(g: &DMatrix<f64>) -> Result<IwasawaCoords> {
    let k = g.nrows();
    if g.ncols() != k {
        return Err(Error::Dimension(format!("expected a square matrix, got {}x{}", k, g.ncols())));
    }
    if k < 2 {
        return Err(Error::Dimension("Iwasawa coordinates need k >= 2".into()));
    }
    let rows: Vec<Vec<f64>> = (0..k).map(|i| g.row(i).iter().copied().collect()).collect();
    let mut q: Vec<Vec<f64>> = vec![Vec::new(); k];
    // t[i][j] for j >= i: coefficient of q_j in row i
    let mut t = vec![vec![0.0; k]; k];
    let mut hadamard = 1.0;
    let mut det_abs = 1.0;
    for i in (0..k).rev() {
        let mut v = rows[i].clone();
        let norm0 = dot(&v, &v).sqrt();
        hadamard *= norm0;
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for j in (i + 1)..k {
                let c = dot(&v, &q[j]);
                t[i][j] += c;
                for (a, b) in v.iter_mut().zip(&q[j]) {
                    *a -= c * b;
                }
            }
        }
        let a = dot(&v, &v).sqrt();
        det_abs *= a;
        if a == 0.0 || !a.is_finite() {
            return Err(Error::Singular { det: 0.0, threshold: 1e-10 });
        }
        t[i][i] = a;
        q[i] = v.iter().map(|x| x / a).collect();
    }
    if !(det_abs > 1e-10 * hadamard) {
        return Err(Error::Singular { det: det_abs, threshold: 1e-10 * hadamard });
    }
    let ak = t[k - 1][k - 1];
    let d: Vec<f64> = (0..k).map(|i| t[i][i] / ak).collect();
    let y: Vec<f64> = (1..k).map(|i| d[k - 1 - i] / d[k - i]).collect();
    let mut x = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            x.push(t[i][j] / t[j][j]);
        }
    }
    Ok(IwasawaCoords { k, x, y })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `h(z) = y_1 y_2^2 ... y_n^n * y_{n+1}^{n-1} ... y_{2n-1}` on GL(2n).
pub fn height(z: &IwasawaCoords) -> Result<f64> {
    if z.k % 2 != 0 {
        return Err(Error::Dimension(format!("height is defined on GL(2n), got k = {}", z.k)));
    }
    let n = z.k / 2;
    let mut log_h = 0.0;
    for (idx, yi) in z.y.iter().enumerate() {
        let i = idx + 1;
        let e = if i <= n { i } else { 2 * n - i };
        log_h += e as f64 * yi.ln();
    }
    Ok(log_h.exp())
}

/// Height of the point represented by an arbitrary invertible matrix.
pub fn height_of_matrix(g: &DMatrix<f64>) -> Result<f64> {
    height(&iwasawa_decompose(g)?)
}
