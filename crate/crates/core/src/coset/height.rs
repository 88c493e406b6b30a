//! Height contraction `h(gamma z) <= h(z)` over a list of coset representatives.

use serde::{Deserialize, Serialize};

use crate::matrix::{height, height_of_matrix, to_real, IntMatrix, IwasawaCoords};
use crate::{Error, Result};

/// Ratios above `1 + tolerance` are reported as violations.
pub const CONTRACTION_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeightReport {
    pub count: usize,
    pub max_ratio: f64,
    /// Index of the representative attaining `max_ratio`.
    pub argmax: usize,
    /// Indices of representatives with ratio above `1 + 1e-10`.
    pub violations: Vec<usize>,
}

pub fn verify_height_contraction(z: &IwasawaCoords, reps: &[IntMatrix]) -> Result<HeightReport> {
    if let Some(v) = z.y.iter().find(|v| **v < 1.0) {
        return Err(Error::precondition(format!("height contraction needs all y_i >= 1, got {v}")));
    }
    let h0 = height(z)?;
    let zm = z.to_matrix();
    let mut report = HeightReport { count: reps.len(), max_ratio: 0.0, argmax: 0, violations: Vec::new() };
    for (idx, g) in reps.iter().enumerate() {
        if g.nrows() != z.k || g.ncols() != z.k {
            return Err(Error::Dimension(format!("representative {idx} is not {0}x{0}", z.k)));
        }
        let ratio = height_of_matrix(&(to_real(g) * &zm))? / h0;
        if ratio > report.max_ratio {
            report.max_ratio = ratio;
            report.argmax = idx;
        }
        if ratio > 1.0 + CONTRACTION_TOLERANCE {
            report.violations.push(idx);
        }
    }
    Ok(report)
}
