//! Criterion benchmarks for the numerical kernels live in `benches/`.
//!
//! This crate only holds shared fixtures.

use rankin_core::{IwasawaCoords, SpectralParams, C64};

/// A fixed GL(4) point with `y_i` in `[1, 2]`.
pub fn gl4_point() -> IwasawaCoords {
    IwasawaCoords::new(4, vec![0.31, -0.12, 0.45, 0.27, -0.38, 0.09], vec![1.35, 1.12, 1.71]).expect("valid coordinates")
}

/// Tempered GL(2) parameters with Langlands parameters `(it, -it)`.
pub fn tempered_gl2(t: f64) -> SpectralParams {
    SpectralParams::from_langlands(&[C64::new(0.0, t), C64::new(0.0, -t)]).expect("valid parameters")
}
