//! The majorant for `|E_{P_{2n-1,1}}(z, w)|` on `Re w = 1/2` and the exponent identities used
//! to put it in closed form.

use std::f64::consts::PI;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::eisenstein::ThetaPair;
use crate::matrix::IwasawaCoords;
use crate::quad::QuadratureSpec;
use crate::special::{gamma, zeta};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaBoundReport {
    /// `|E(z, w)|` after removing `pi^{-nw} Gamma(nw) zeta(2nw)`.
    pub value: f64,
    pub majorant: f64,
    pub ratio: f64,
}

/// `e^{pi n |w| / 2} |w|^{-(n-1)/2} sum_k [P_k^{1/2} Q_k^{1/2} + P_k^{(k-1)/2n} Q_k^{(2n-k+1)/2n}] L`
/// with `P_k = y_1 y_2^2 ... y_{2n-k}^{2n-k}`, `Q_k = y_{2n-k+1}^{k-1} ... y_{2n-1}` and
/// `L = max(1, log(y_1 ... y_{2n-1}))`.
pub fn theta_majorant(y: &[f64], w: C64) -> Result<f64> {
    let k2 = y.len() + 1;
    if k2 % 2 != 0 {
        return Err(Error::Dimension(format!("need 2n - 1 coordinates, got {}", y.len())));
    }
    let n = (k2 / 2) as f64;
    let log_p = |k: usize| (1..=k2 - k).map(|j| j as f64 * y[j - 1].ln()).sum::<f64>();
    let log_q = |k: usize| (k2 - k + 1..k2).map(|j| (k2 - j) as f64 * y[j - 1].ln()).sum::<f64>();
    let two_n = k2 as f64;
    let mut sum = 0.0;
    for k in 1..=k2 {
        let (p, q) = (log_p(k), log_q(k));
        let kf = k as f64;
        sum += (0.5 * p + 0.5 * q).exp() + ((kf - 1.0) / two_n * p + (two_n - kf + 1.0) / two_n * q).exp();
    }
    let log_term = y.iter().map(|v| v.ln()).sum::<f64>().max(1.0);
    Ok((PI / 2.0 * n * w.norm()).exp() * w.norm().powf(-(n - 1.0) / 2.0) * sum * log_term)
}

pub fn check_theta_bound(z: &IwasawaCoords, w: C64, q: &QuadratureSpec) -> Result<ThetaBoundReport> {
    if (w.re - 0.5).abs() > 1e-12 {
        return Err(Error::precondition(format!("the bound is stated on Re(w) = 1/2, got {w}")));
    }
    if let Some(v) = z.y.iter().find(|v| **v < 1.0) {
        return Err(Error::precondition(format!("the bound needs all y_i >= 1, got {v}")));
    }
    let pair = ThetaPair::new(z)?;
    let n = pair.primal.half_rank() as f64;
    let nw = w * n;
    let completion = (-nw * PI.ln()).exp() * gamma(nw)? * zeta(2.0 * nw)?;
    let value = (pair.completed(w, q)? / completion).norm();
    let majorant = theta_majorant(&z.y, w)?;
    Ok(ThetaBoundReport { value, majorant, ratio: value / majorant })
}

/// Exponents of `log Y_k` in terms of `log y_1 .. log y_{2n-1}`.
fn log_big_y(two_n: usize, k: usize) -> Vec<Rational64> {
    (1..two_n)
        .map(|j| {
            let head = if j <= two_n - k { 1 } else { 0 };
            Rational64::from_integer(head) - Rational64::new((two_n - j) as i64, two_n as i64)
        })
        .collect()
}

fn combine(terms: &[(Rational64, Vec<Rational64>)], len: usize) -> Vec<Rational64> {
    let mut out = vec![Rational64::from_integer(0); len];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v) {
            *o += *c * *x;
        }
    }
    out
}

/// Exponent vectors of `P_k` and `Q_k`.
fn pq(two_n: usize, k: usize) -> (Vec<Rational64>, Vec<Rational64>) {
    let p = (1..two_n).map(|j| Rational64::from_integer(if j <= two_n - k { j as i64 } else { 0 })).collect();
    let q = (1..two_n)
        .map(|j| Rational64::from_integer(if j > two_n - k { (two_n - j) as i64 } else { 0 }))
        .collect();
    (p, q)
}

fn check_k(two_n: usize, k: usize) -> Result<()> {
    if two_n < 2 || two_n % 2 != 0 || k == 0 || k > two_n {
        return Err(Error::Index(format!("need even 2n >= 2 and 1 <= k <= 2n, got 2n = {two_n}, k = {k}")));
    }
    Ok(())
}

/// Both sides of `Y_{k+1}^{-1} ... Y_{2n}^{-1} Y_k^{n-k} = P_k^{1/2} Q_k^{1/2}` as exponent
/// vectors over `log y_1 .. log y_{2n-1}`.
pub fn exponent_identity_half(two_n: usize, k: usize) -> Result<(Vec<Rational64>, Vec<Rational64>)> {
    check_k(two_n, k)?;
    let n = (two_n / 2) as i64;
    let mut terms: Vec<(Rational64, Vec<Rational64>)> =
        (k + 1..=two_n).map(|i| (Rational64::from_integer(-1), log_big_y(two_n, i))).collect();
    terms.push((Rational64::from_integer(n - k as i64), log_big_y(two_n, k)));
    let lhs = combine(&terms, two_n - 1);
    let (p, q) = pq(two_n, k);
    let half = Rational64::new(1, 2);
    let rhs = combine(&[(half, p), (half, q)], two_n - 1);
    Ok((lhs, rhs))
}

/// Both sides of `Y_{k+1}^{-1} ... Y_{2n}^{-1} Y_k^{-1} = P_k^{(k-1)/2n} Q_k^{(2n-k+1)/2n}`.
pub fn exponent_identity_weighted(two_n: usize, k: usize) -> Result<(Vec<Rational64>, Vec<Rational64>)> {
    check_k(two_n, k)?;
    let terms: Vec<(Rational64, Vec<Rational64>)> =
        (k..=two_n).map(|i| (Rational64::from_integer(-1), log_big_y(two_n, i))).collect();
    let lhs = combine(&terms, two_n - 1);
    let (p, q) = pq(two_n, k);
    let d = two_n as i64;
    let rhs = combine(
        &[(Rational64::new(k as i64 - 1, d), p), (Rational64::new(d - k as i64 + 1, d), q)],
        two_n - 1,
    );
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::big_y;

    #[test]
    fn exponent_identities_exact() {
        for two_n in [2, 4, 6, 8] {
            for k in 1..=two_n {
                let (l, r) = exponent_identity_half(two_n, k).unwrap();
                assert_eq!(l, r, "half-weight identity 2n = {two_n}, k = {k}");
                let (l, r) = exponent_identity_weighted(two_n, k).unwrap();
                assert_eq!(l, r, "weighted identity 2n = {two_n}, k = {k}");
            }
        }
        assert!(exponent_identity_half(4, 5).is_err());
    }

    #[test]
    fn exponent_vectors_match_floating_point() {
        let z = IwasawaCoords::diagonal(vec![1.3, 2.1, 1.7]).unwrap();
        let y = big_y(&z);
        let (lhs, _) = exponent_identity_half(4, 2).unwrap();
        let from_exp: f64 = lhs.iter().zip(&z.y).map(|(e, v)| (*e.numer() as f64 / *e.denom() as f64) * v.ln()).sum();
        let direct = (y[1].powi(0) / (y[2] * y[3])).ln();
        assert!((from_exp - direct).abs() < 1e-13);
    }

    #[test]
    fn majorant_at_identity() {
        let w = C64::new(0.5, 5.0);
        let m = theta_majorant(&[1.0, 1.0, 1.0], w).unwrap();
        let pref = (PI / 2.0 * 2.0 * w.norm()).exp() / w.norm().sqrt();
        assert!((m / pref - 8.0).abs() < 1e-12);
        let r = check_theta_bound(&IwasawaCoords::identity(4), w, &QuadratureSpec::default()).unwrap();
        assert!(r.ratio > 0.0 && r.ratio < 1.0, "{r:?}");
    }

    #[test]
    fn ratio_bounded_along_growing_y() {
        let w = C64::new(0.5, 3.0);
        let q = QuadratureSpec::default();
        let mut ratios = Vec::new();
        let mut values = Vec::new();
        for y1 in [1.0, 2.0, 4.0, 8.0] {
            let z = IwasawaCoords::diagonal(vec![y1, 1.0, 1.0]).unwrap();
            let r = check_theta_bound(&z, w, &q).unwrap();
            ratios.push(r.ratio);
            values.push(r.value);
        }
        assert!(values.last().unwrap() > values.first().unwrap());
        let spread = ratios.iter().cloned().fold(0.0, f64::max) / ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread < 50.0, "{ratios:?}");
        assert!(check_theta_bound(&IwasawaCoords::diagonal(vec![0.5, 1.0, 1.0]).unwrap(), w, &q).is_err());
    }
}
