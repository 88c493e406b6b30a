//! The theta function of a unimodular lattice attached to a point of `GL(2n)` and the
//! maximal parabolic Eisenstein series `E*_{P_{2n-1,1}}` built from it.
//!
//! For `z = x y` the lattice vectors are `b = a x diag(Y_1, ..., Y_{2n})` with `a` integral,
//! where `Y_k` is the `k`-th diagonal entry of `y` scaled to determinant one. The vectors of
//! squared length at most `B^2` are enumerated once, coordinate by coordinate, and kept as a
//! sorted list of squared lengths.

mod bound;
mod eisenstein;

pub use bound::{check_theta_bound, exponent_identity_half, exponent_identity_weighted, theta_majorant, ThetaBoundReport};
pub use eisenstein::{
    det_character, dual_coords, eisenstein_completed, eisenstein_coset_sum, transpose_inverse_coords, ThetaPair,
};

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::matrix::IwasawaCoords;
use crate::quad::adaptive;
use crate::{Error, Result, C64};

/// Default truncation: `pi B^2 = 46`, so omitted terms at `u = 1` are below `e^{-46}` each.
pub const DEFAULT_PI_B2: f64 = 46.0;

/// `e^{-pi u B^2}` must stay below this for a truncated theta value to be accepted.
pub const TAIL_THRESHOLD: f64 = 1e-16;

#[derive(Clone, Debug)]
pub struct ThetaContext {
    pub coords: IwasawaCoords,
    /// `Y_1 >= ... >= Y_{2n}` when all `y_i >= 1`; their product is one.
    pub big_y: Vec<f64>,
    /// Lattice vectors with `|b| <= lattice_bound` are summed.
    pub lattice_bound: f64,
    norms: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaEval {
    pub value: f64,
    /// Upper bound for the omitted terms.
    pub tail_bound: f64,
}

/// `Y_k = y_1 ... y_{2n-k} (y_1^{2n-1} ... y_{2n-1})^{-1/2n}`.
pub fn big_y(z: &IwasawaCoords) -> Vec<f64> {
    let k = z.k;
    let logs: Vec<f64> = (0..k).map(|j| z.diag_entry(j).ln()).collect();
    let mean = logs.iter().sum::<f64>() / k as f64;
    logs.iter().map(|l| (l - mean).exp()).collect()
}

impl ThetaContext {
    pub fn new(coords: IwasawaCoords, lattice_bound: f64) -> Result<Self> {
        if coords.k % 2 != 0 {
            return Err(Error::Dimension(format!("the theta lift lives on GL(2n), got k = {}", coords.k)));
        }
        if !(lattice_bound > 0.0 && lattice_bound.is_finite()) {
            return Err(Error::invalid(format!("lattice bound must be positive, got {lattice_bound}")));
        }
        let big_y = big_y(&coords);
        let norms = enumerate_norms(&coords, &big_y, lattice_bound * lattice_bound);
        Ok(Self { coords, big_y, lattice_bound, norms })
    }

    pub fn with_default_bound(coords: IwasawaCoords) -> Result<Self> {
        Self::new(coords, (DEFAULT_PI_B2 / PI).sqrt())
    }

    /// Half the dimension: the lattice has rank `2n`.
    pub fn half_rank(&self) -> usize {
        self.coords.k / 2
    }

    /// Number of nonzero lattice vectors within the bound.
    pub fn vector_count(&self) -> usize {
        self.norms.len()
    }

    /// Squared length of a shortest nonzero vector.
    pub fn min_norm(&self) -> f64 {
        self.norms.first().copied().unwrap_or(self.lattice_bound * self.lattice_bound)
    }

    /// `theta_z(u) - 1` from the enumerated vectors, without truncation checks.
    pub fn theta_minus_one(&self, u: f64) -> f64 {
        let Some(&q0) = self.norms.first() else { return 0.0 };
        let cut = q0 + (45.0 + (self.norms.len() as f64).ln()) / (PI * u);
        let mut acc = 0.0;
        for &q in &self.norms {
            if q > cut {
                break;
            }
            acc += (-PI * u * q).exp();
        }
        acc
    }

    /// Bound for `sum_{|b| > B} e^{-pi u |b|^2}` from the point count
    /// `N(r) <= prod_k (2 r / Y_k + 1)`, integrated by parts against the Gaussian.
    pub fn tail_bound(&self, u: f64) -> f64 {
        let b = self.lattice_bound;
        let count = |r: f64| self.big_y.iter().map(|y| 2.0 * r / y + 1.0).product::<f64>();
        let width = (80.0 / (PI * u)).sqrt();
        let f = |r: f64| C64::new(2.0 * PI * u * r * (-PI * u * (r * r - b * b)).exp() * count(r), 0.0);
        let scaled = adaptive(f, b, b + width, 0.0, 1e-6, 200).map(|i| i.value.re).unwrap_or(f64::INFINITY);
        scaled * (-PI * u * b * b).exp()
    }
}

/// All squared lengths `|a x diag(Y)|^2 <= r2` over nonzero integral `a`, sorted.
fn enumerate_norms(z: &IwasawaCoords, big_y: &[f64], r2: f64) -> Vec<f64> {
    let k = z.k;
    let first_range = (r2.sqrt() / big_y[0]).floor() as i64;
    let mut parts: Vec<Vec<f64>> = (-first_range..=first_range)
        .into_par_iter()
        .map(|a1| {
            let mut out = Vec::new();
            let mut a = vec![0i64; k];
            a[0] = a1;
            let b0 = a1 as f64 * big_y[0];
            descend(z, big_y, &mut a, 1, b0 * b0, r2, &mut out);
            out
        })
        .collect();
    let mut norms: Vec<f64> = parts.iter_mut().flat_map(std::mem::take).collect();
    // drop the zero vector
    if let Some(pos) = norms.iter().position(|q| *q == 0.0) {
        norms.swap_remove(pos);
    }
    norms.sort_by(f64::total_cmp);
    norms
}

fn descend(z: &IwasawaCoords, big_y: &[f64], a: &mut [i64], level: usize, used: f64, r2: f64, out: &mut Vec<f64>) {
    let k = a.len();
    if used > r2 {
        return;
    }
    if level == k {
        out.push(used);
        return;
    }
    let shift: f64 = (0..level).map(|i| a[i] as f64 * z.x_at(i, level)).sum();
    let room = ((r2 - used).max(0.0)).sqrt() / big_y[level];
    let lo = (-shift - room).ceil() as i64;
    let hi = (-shift + room).floor() as i64;
    for v in lo..=hi {
        let b = (v as f64 + shift) * big_y[level];
        a[level] = v;
        descend(z, big_y, a, level + 1, used + b * b, r2, out);
    }
    a[level] = 0;
}

/// `theta_z(u)` with a bound on the truncation error.
pub fn theta(ctx: &ThetaContext, u: f64) -> Result<ThetaEval> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::invalid(format!("theta needs u > 0, got {u}")));
    }
    let b = ctx.lattice_bound;
    let cut = (-PI * u * b * b).exp();
    if cut >= TAIL_THRESHOLD {
        return Err(Error::precondition(format!(
            "lattice bound {b} too small at u = {u}: e^(-pi u B^2) = {cut:e}, tail bound {:e}",
            ctx.tail_bound(u)
        )));
    }
    Ok(ThetaEval { value: 1.0 + ctx.theta_minus_one(u), tail_bound: ctx.tail_bound(u) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn jacobi(u: f64) -> f64 {
        (-60i64..=60).map(|m| (-PI * u * (m * m) as f64).exp()).sum()
    }

    #[test]
    fn gl2_identity_is_square_of_jacobi_theta() {
        let ctx = ThetaContext::with_default_bound(IwasawaCoords::identity(2)).unwrap();
        let t = theta(&ctx, 1.0).unwrap();
        assert!((t.value - jacobi(1.0).powi(2)).abs() < 1e-15);
        let ctx4 = ThetaContext::with_default_bound(IwasawaCoords::identity(4)).unwrap();
        assert!((theta(&ctx4, 1.3).unwrap().value - jacobi(1.3).powi(4)).abs() < 1e-14);
    }

    #[test]
    fn large_u_limit_and_lower_bound() {
        let ctx = ThetaContext::with_default_bound(IwasawaCoords::identity(4)).unwrap();
        assert!(theta(&ctx, 12.0).unwrap().value >= 1.0);
        let rest = ctx.theta_minus_one(12.0);
        assert!((rest / (8.0 * (-PI * 12.0).exp()) - 1.0).abs() < 1e-6);
        assert!(ctx.theta_minus_one(200.0) < 1e-200);
    }

    #[test]
    fn big_y_normalised_and_ordered() {
        let z = IwasawaCoords::new(4, vec![0.2, -0.4, 0.1, 0.3, 0.0, 0.5], vec![1.5, 1.2, 2.0]).unwrap();
        let y = big_y(&z);
        assert!((y.iter().product::<f64>() - 1.0).abs() < 1e-14);
        assert!(y.windows(2).all(|w| w[0] >= w[1]));
        // Y_k = y_1 ... y_{2n-k} / (y_1^3 y_2^2 y_3)^{1/4}
        let g = (1.5f64.powi(3) * 1.2f64.powi(2) * 2.0).powf(0.25);
        assert!((y[0] - 1.5 * 1.2 * 2.0 / g).abs() < 1e-14 && (y[3] - 1.0 / g).abs() < 1e-14);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let z = IwasawaCoords::new(4, vec![0.35, -0.4, 0.1, 0.3, -0.25, 0.45], vec![1.3, 1.1, 1.6]).unwrap();
        let ctx = ThetaContext::new(z.clone(), 2.2).unwrap();
        let m = z.to_matrix();
        let det = m.determinant().abs();
        let mut brute = Vec::new();
        let r = 6i64;
        for a0 in -r..=r {
            for a1 in -r..=r {
                for a2 in -r..=r {
                    for a3 in -r..=r {
                        if (a0, a1, a2, a3) == (0, 0, 0, 0) {
                            continue;
                        }
                        let a = nalgebra::RowDVector::from_vec(vec![a0 as f64, a1 as f64, a2 as f64, a3 as f64]);
                        let q = (a * &m).norm_squared() / det.sqrt();
                        if q <= 2.2 * 2.2 {
                            brute.push(q);
                        }
                    }
                }
            }
        }
        brute.sort_by(f64::total_cmp);
        assert_eq!(brute.len(), ctx.vector_count());
        for (p, q) in brute.iter().zip(&ctx.norms) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_change_within_tail_bound() {
        let z = IwasawaCoords::new(4, vec![0.1, 0.2, 0.3, -0.1, 0.4, 0.2], vec![1.4, 1.0, 1.8]).unwrap();
        let small = ThetaContext::new(z.clone(), (38.0 / PI).sqrt()).unwrap();
        let large = ThetaContext::new(z, (50.0 / PI).sqrt()).unwrap();
        for u in [1.0, 1.5, 3.0] {
            let a = theta(&small, u).unwrap();
            let b = theta(&large, u).unwrap();
            assert!((b.value - a.value).abs() <= a.tail_bound, "u = {u}");
            assert!(a.tail_bound < 1e-12);
        }
        assert!(matches!(theta(&small, 0.2), Err(Error::Precondition(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn theta_nonincreasing(y1 in 1.0f64..2.0, y2 in 1.0f64..2.0, y3 in 1.0f64..2.0, x in -0.5f64..0.5, u in 1.0f64..4.0) {
            let z = IwasawaCoords::new(4, vec![x, 0.1, -x, 0.2, x * 0.5, -0.3], vec![y1, y2, y3]).unwrap();
            let ctx = ThetaContext::with_default_bound(z).unwrap();
            let a = theta(&ctx, u).unwrap().value;
            let b = theta(&ctx, u * 1.05).unwrap().value;
            prop_assert!(b <= a && b >= 1.0);
        }
    }
}
