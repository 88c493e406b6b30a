//! `E*(z, s)` as two incomplete Mellin transforms of theta functions plus the polar part,
//! and the truncated coset sum it is compared with.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::ThetaContext;
use crate::coset::{enumerate_cosets, LatticeEnumSpec};
use crate::matrix::{flip_rows, iwasawa_decompose, to_real, IwasawaCoords};
use crate::quad::{adaptive, QuadratureSpec};
use crate::special::{gamma, zeta};
use crate::{Error, Result, C64};

/// Iwasawa coordinates of `t(z)^{-1}`.
pub fn transpose_inverse_coords(z: &IwasawaCoords) -> Result<IwasawaCoords> {
    let m = z.to_matrix();
    let inv = m.clone().try_inverse().ok_or(Error::Singular { det: m.determinant(), threshold: 0.0 })?;
    iwasawa_decompose(&inv.transpose())
}

/// Iwasawa coordinates of `w t(z)^{-1} w` with `w` the long Weyl element.
pub fn dual_coords(z: &IwasawaCoords) -> Result<IwasawaCoords> {
    let m = z.to_matrix();
    let inv = m.clone().try_inverse().ok_or(Error::Singular { det: m.determinant(), threshold: 0.0 })?;
    let flipped = flip_rows(&inv.transpose());
    iwasawa_decompose(&flip_rows(&flipped.transpose()).transpose())
}

/// Theta contexts of `z` and of its dual point.
#[derive(Clone, Debug)]
pub struct ThetaPair {
    pub primal: ThetaContext,
    pub dual: ThetaContext,
}

impl ThetaPair {
    pub fn new(z: &IwasawaCoords) -> Result<Self> {
        Ok(Self {
            primal: ThetaContext::with_default_bound(z.clone())?,
            dual: ThetaContext::with_default_bound(dual_coords(z)?)?,
        })
    }

    pub fn completed(&self, s: C64, q: &QuadratureSpec) -> Result<C64> {
        q.validate()?;
        if s.norm() < 1e-14 || (s - 1.0).norm() < 1e-14 {
            return Err(Error::Pole { func: "eisenstein_completed", at: format!("s = {s}") });
        }
        let n = self.primal.half_rank() as f64;
        let a = incomplete_mellin(&self.primal, s * n, q)?;
        let b = incomplete_mellin(&self.dual, (1.0 - s) * n, q)?;
        Ok(a + b - (1.0 / (1.0 - s) + 1.0 / s) / n)
    }
}

/// `int_1^inf (theta(u) - 1) u^e du/u`, in the variable `v = log u`.
fn incomplete_mellin(ctx: &ThetaContext, e: C64, q: &QuadratureSpec) -> Result<C64> {
    let q0 = ctx.min_norm();
    let log_count = (ctx.vector_count().max(1) as f64).ln();
    // upper end: every term is below e^{-50} of the scale at u = 1
    let mut v_max = 0.0f64;
    while -PI * v_max.exp() * q0 + e.re * v_max + log_count > -50.0 - PI * q0 {
        v_max += 0.125;
    }
    let f = |v: f64| (e * v).exp() * ctx.theta_minus_one(v.exp());
    let scale = ctx.theta_minus_one(1.0).max(1e-300);
    Ok(adaptive(f, 0.0, v_max.max(0.5), 1e-6 * q.rel_tol * scale, q.rel_tol, q.max_subdivisions)?.value)
}

/// `E*_{P_{2n-1,1}}(z, s)` through the theta integral.
pub fn eisenstein_completed(z: &IwasawaCoords, s: C64, q: &QuadratureSpec) -> Result<C64> {
    ThetaPair::new(z)?.completed(s, q)
}

/// `Det(g) = |det g| / |e_k g|^k`, the character summed over `P_{k-1,1}` cosets.
pub fn det_character(g: &DMatrix<f64>) -> f64 {
    let k = g.nrows();
    let last = g.row(k - 1).norm();
    (g.determinant().abs().ln() - k as f64 * last.ln()).exp()
}

/// `pi^{-ns} Gamma(ns) zeta(2ns) sum_gamma Det(gamma z)^s` over the cosets of
/// `P~_{2n,1}(Z)` whose bottom row has entries bounded by `entry_bound`. Each primitive
/// bottom row is counted with both signs, which is the normalisation of the theta integral.
pub fn eisenstein_coset_sum(z: &IwasawaCoords, s: C64, entry_bound: i64) -> Result<C64> {
    if !(s.re > 1.0) {
        return Err(Error::precondition(format!("the coset sum converges for Re(s) > 1, got {s}")));
    }
    let k = z.k;
    if k % 2 != 0 {
        return Err(Error::Dimension(format!("need GL(2n), got k = {k}")));
    }
    let n = (k / 2) as f64;
    let zm = z.to_matrix();
    let reps = enumerate_cosets(&LatticeEnumSpec::new(k, 1, entry_bound))?;
    let mut logs: Vec<f64> = reps.iter().map(|(_, g)| det_character(&(to_real(g) * &zm)).ln()).collect();
    logs.sort_by(f64::total_cmp);
    let sum = logs.iter().fold(C64::new(0.0, 0.0), |acc, l| acc + (s * *l).exp());
    let ns = s * n;
    Ok((-ns * PI.ln()).exp() * gamma(ns)? * zeta(2.0 * ns)? * sum)
}
