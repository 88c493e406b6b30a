//! Linear algebra on GL(k): Iwasawa coordinates, minors and wedge norms, spectral
//! parameters, and the height function on GL(2n).

mod iwasawa;
mod minors;
mod spectral;

pub use iwasawa::{height, height_of_matrix, iwasawa_decompose, IwasawaCoords};
pub use minors::{
    det_exact, det_ring, minor, minor_exact, minor_real, minor_ring, subsets, wedge_norm_sq, wedge_norm_sq_exact,
    wedge_norm_sq_ring, MinorIndex,
};
pub use spectral::{b_entry, b_matrix, i_nu, i_nu_of_matrix, langlands_params, SpectralParams};

use nalgebra::DMatrix;

/// Integer matrices. Products are formed in `i64`; exact determinants go through `BigInt`.
pub type IntMatrix = DMatrix<i64>;

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    DMatrix::from_fn(r, c, |i, j| rows[i][j])
}

pub fn to_real(m: &IntMatrix) -> DMatrix<f64> {
    m.map(|v| v as f64)
}

/// Matrix with the rows in reverse order, the long Weyl element acting on the left.
pub fn flip_rows(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    DMatrix::from_fn(n, m.ncols(), |i, j| m[(n - 1 - i, j)])
}
