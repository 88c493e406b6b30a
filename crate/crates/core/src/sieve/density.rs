//! Density scans over the primes of a dyadic window `[N, 2N]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eta::eta_prime_abs;
use super::primes::{is_prime, primes_in_window};
use crate::lfun::CuspFormData;
use crate::{Error, Result};

/// Hecke eigenvalues below this size do not count as "good".
pub const GOOD_LAMBDA: f64 = 0.01;

/// The primes in `[N, 2N]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeWindow {
    pub left: u64,
    pub primes: Vec<u64>,
}

impl PrimeWindow {
    pub fn new(left: u64) -> Result<Self> {
        if left < 2 {
            return Err(Error::invalid(format!("window left end must be at least 2, got {left}")));
        }
        let right = left.checked_mul(2).ok_or_else(|| Error::invalid("window overflows u64"))?;
        Ok(Self { left, primes: primes_in_window(left, right) })
    }

    pub fn right(&self) -> u64 {
        2 * self.left
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Every element is prime and no prime of the window is missing.
    pub fn is_complete(&self) -> bool {
        let mut it = self.primes.iter().peekable();
        for m in self.left..=self.right() {
            if is_prime(m) {
                if it.next() != Some(&m) {
                    return false;
                }
            } else if it.peek() == Some(&&m) {
                return false;
            }
        }
        it.next().is_none()
    }
}

/// One row of a density scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub left: u64,
    pub count: usize,
    pub total: usize,
    pub fraction: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Largest `|lambda(p)|` seen, when Hecke data was scanned.
    pub max_lambda: Option<f64>,
}

impl DensityReport {
    fn new(left: u64, count: usize, total: usize, fraction: f64, threshold: f64, max_lambda: Option<f64>) -> Self {
        Self { left, count, total, fraction, threshold, pass: fraction >= threshold, max_lambda }
    }

    pub const CSV_HEADER: &'static str = "N,count,fraction,threshold,pass";

    pub fn csv_row(&self) -> String {
        format!("{},{},{:.6},{:.6},{}", self.left, self.count, self.fraction, self.threshold, self.pass)
    }
}

/// `|lambda(p)|` on the window, in parallel.
fn lambda_abs(fd: &CuspFormData, window: &PrimeWindow) -> Result<Vec<f64>> {
    window.primes.par_iter().map(|p| fd.hecke_at(*p).map(|l| l.norm())).collect()
}

fn good_mask(lambdas: &[f64]) -> Vec<bool> {
    lambdas.iter().map(|l| *l >= GOOD_LAMBDA).collect()
}

fn max_of(v: &[f64]) -> Option<f64> {
    v.iter().copied().reduce(f64::max)
}

/// Primes of `[N, 2N]` with `|lambda(p)| >= 1/100`, normalised as `count * log N / N` and
/// compared with `1 / (10 n^2)`.
pub fn good_prime_density(fd: &CuspFormData, left: u64) -> Result<DensityReport> {
    let window = PrimeWindow::new(left)?;
    let lambdas = lambda_abs(fd, &window)?;
    let count = good_mask(&lambdas).iter().filter(|g| **g).count();
    let fraction = count as f64 * (left as f64).ln() / left as f64;
    let n = fd.n as f64;
    Ok(DensityReport::new(left, count, window.len(), fraction, 1.0 / (10.0 * n * n), max_of(&lambdas)))
}

/// The lower bound `Delta = 1 / (2000^2 n^4)` for `|eta_{nit}(p)|`.
pub fn eta_delta(n: usize) -> f64 {
    1.0 / (2000.0f64.powi(2) * (n as f64).powi(4))
}

/// Scan of `|eta_{nit}(p)| >= delta` on `[N, 2N]`; the exceptional primes are returned too.
pub fn eta_scan(t: f64, n: usize, left: u64, delta: f64) -> Result<(DensityReport, Vec<u64>)> {
    if n == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    if t.abs() >= 1.0 && (left as f64) < t * t {
        return Err(Error::precondition(format!("need N >= t^2, got N = {left}, t = {t}")));
    }
    let window = PrimeWindow::new(left)?;
    let nt = n as f64 * t;
    let exceptions: Vec<u64> = window.primes.par_iter().copied().filter(|p| eta_prime_abs(nt, *p) < delta).collect();
    let count = window.len() - exceptions.len();
    let fraction = if window.is_empty() { 1.0 } else { count as f64 / window.len() as f64 };
    let nf = n as f64;
    Ok((DensityReport::new(left, count, window.len(), fraction, 1.0 - 1.0 / (20.0 * nf * nf), None), exceptions))
}

/// Fraction of primes in `[N, 2N]` with `|eta_{nit}(p)| >= 1 / (2000^2 n^4)`, against
/// `1 - 1 / (20 n^2)`. Requires `N >= t^2` once `|t| >= 1`.
pub fn eta_lower_density(t: f64, n: usize, left: u64) -> Result<DensityReport> {
    eta_scan(t, n, left, eta_delta(n)).map(|r| r.0)
}

/// Fraction of primes in `[N, 2N]` that are good for both `lambda` and `eta`, against
/// `1 / (20 n^2)`, normalised like [`good_prime_density`].
pub fn overlap_density(fd: &CuspFormData, t: f64, left: u64) -> Result<DensityReport> {
    let n = fd.n;
    let (_, exceptions) = eta_scan(t, n, left, eta_delta(n))?;
    let window = PrimeWindow::new(left)?;
    let lambdas = lambda_abs(fd, &window)?;
    let good = good_mask(&lambdas);
    let count = window
        .primes
        .iter()
        .zip(&good)
        .filter(|(p, g)| **g && exceptions.binary_search(p).is_err())
        .count();
    let fraction = count as f64 * (left as f64).ln() / left as f64;
    let nf = n as f64;
    Ok(DensityReport::new(left, count, window.len(), fraction, 1.0 / (20.0 * nf * nf), max_of(&lambdas)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfun::SatakeSource;
    use crate::C64;
    use std::f64::consts::PI;

    #[test]
    fn window_is_complete() {
        let w = PrimeWindow::new(10_000).unwrap();
        assert!(w.is_complete());
        assert_eq!(w.primes.first(), Some(&10_007));
        assert!(PrimeWindow::new(1).is_err());
    }

    #[test]
    fn sato_tate_data_has_many_good_primes() {
        let fd = CuspFormData::random_sato_tate(2, 7).unwrap();
        let r = good_prime_density(&fd, 20_000).unwrap();
        assert!(r.pass && r.fraction > 0.5, "{r:?}");
        assert!(r.max_lambda.unwrap() <= 2.0 + 1e-12);
    }

    #[test]
    fn vanishing_eigenvalues_fail() {
        let left = 500;
        let mut doc = CuspFormData::random_sato_tate(2, 1).unwrap().to_document(2).unwrap();
        doc.satake.clear();
        doc.hecke.clear();
        for p in crate::sieve::primes_up_to(2 * left) {
            doc.satake.insert(p, vec![C64::new(0.0, 1.0), C64::new(0.0, -1.0)]);
        }
        let fd = CuspFormData::from_document(doc).unwrap();
        assert!(matches!(fd.satake, SatakeSource::Table(_)));
        let r = good_prime_density(&fd, left).unwrap();
        assert_eq!((r.count, r.fraction, r.pass), (0, 0.0, false));
    }

    #[test]
    fn eta_density_and_trivial_cases() {
        let r = eta_lower_density(10.0, 2, 20_000).unwrap();
        assert!(r.pass, "{r:?}");
        let z = eta_lower_density(0.0, 3, 5_000).unwrap();
        assert_eq!(z.fraction, 1.0);
        assert!(matches!(eta_lower_density(300.0, 2, 20_000), Err(Error::Precondition(_))));
    }

    #[test]
    fn failing_primes_cluster_near_cosine_zeros() {
        // |2 cos(x)| < delta forces x within asin(delta / 2) of an odd multiple of pi/2
        let (t, n, delta) = (10.0, 2usize, 0.05);
        let (_, bad) = eta_scan(t, n, 20_000, delta).unwrap();
        assert!(!bad.is_empty());
        let slack = 2.0 * (delta / 2.0).asin();
        for p in bad {
            let x = 2.0 * n as f64 * t * (p as f64).ln();
            let m = ((x / PI - 1.0) / 2.0).round();
            assert!((x - (2.0 * m + 1.0) * PI).abs() <= slack + 1e-12, "p = {p}");
        }
    }

    #[test]
    fn overlap_obeys_inclusion_exclusion() {
        let fd = CuspFormData::random_sato_tate(2, 3).unwrap();
        let left = 20_000;
        let good = good_prime_density(&fd, left).unwrap();
        let (eta_r, _) = eta_scan(10.0, 2, left, 0.2).unwrap();
        let both = {
            let (_, exc) = eta_scan(10.0, 2, left, 0.2).unwrap();
            let w = PrimeWindow::new(left).unwrap();
            w.primes
                .iter()
                .filter(|p| fd.hecke_at(**p).unwrap().norm() >= GOOD_LAMBDA && !exc.contains(p))
                .count()
        };
        assert!(both + good.total >= good.count + eta_r.count);
        let overlap = overlap_density(&fd, 10.0, left).unwrap();
        assert!(overlap.pass);
        let vacuous = overlap_density(&fd, 0.0, left).unwrap();
        assert_eq!((vacuous.count, vacuous.fraction), (good.count, good.fraction));
    }
}
