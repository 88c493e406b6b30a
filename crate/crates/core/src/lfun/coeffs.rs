//! Dirichlet coefficients `lambda_{f x f~}(m)` and the Euler product.

use super::{CuspFormData, SatakeSource};
use crate::sieve::primes_up_to;
use crate::{Error, Result, C64};

/// `lambda_{f x f~}(p^k)` for `k = 0..=kmax` from the Satake parameters at `p`.
///
/// These are the complete homogeneous symmetric polynomials in the `n^2` products
/// `alpha_i conj(alpha_j)`, whose power sums are `|sum_i alpha_i^j|^2`; Newton's identities
/// turn one into the other.
pub fn local_rs_coefficients(satake: &[C64], kmax: usize) -> Vec<f64> {
    let power: Vec<f64> = (1..=kmax).map(|j| satake.iter().map(|a| a.powi(j as i32)).sum::<C64>().norm_sqr()).collect();
    let mut h = vec![1.0; kmax + 1];
    for k in 1..=kmax {
        h[k] = (1..=k).map(|j| power[j - 1] * h[k - j]).sum::<f64>() / k as f64;
    }
    h
}

/// Coefficients `lambda_{f x f~}(m)` for `1 <= m <= m_max`; index 0 is unused.
#[derive(Clone, Debug, PartialEq)]
pub struct RsCoefficients {
    values: Vec<f64>,
}

impl RsCoefficients {
    pub fn m_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, m: u64) -> Option<f64> {
        (m >= 1).then(|| self.values.get(m as usize).copied()).flatten()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values[1..]
    }
}

/// Sieve for blocks of coefficients: the local tables for primes up to `sqrt(m_max)` are
/// built once, larger prime factors occur to the first power only.
pub(crate) struct RsSieve<'a> {
    fd: &'a CuspFormData,
    m_max: u64,
    small: Vec<(u64, Vec<f64>)>,
}

impl<'a> RsSieve<'a> {
    pub(crate) fn new(fd: &'a CuspFormData, m_max: u64) -> Result<Self> {
        let root = (m_max as f64).sqrt() as u64 + 1;
        let small = primes_up_to(root)
            .into_iter()
            .map(|p| {
                let kmax = ((m_max as f64).ln() / (p as f64).ln()).floor() as usize + 1;
                Ok((p, local_rs_coefficients(&fd.satake_at(p)?, kmax)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { fd, m_max, small })
    }

    fn large_prime(&self, q: u64) -> Result<f64> {
        match self.fd.satake {
            SatakeSource::Isobaric => {
                let lq = (q as f64).ln();
                let s: C64 = self.fd.alpha().iter().map(|a| C64::from_polar(1.0, -a.im * lq)).sum();
                Ok(s.norm_sqr())
            }
            _ => self.fd.rs_prime_coefficient(q),
        }
    }

    /// Coefficients for `lo <= m < hi`.
    pub(crate) fn block(&self, lo: u64, hi: u64) -> Result<Vec<f64>> {
        if lo == 0 || hi > self.m_max + 1 {
            return Err(Error::Index(format!("block [{lo}, {hi}) outside 1..={}", self.m_max)));
        }
        let len = (hi - lo) as usize;
        let mut rem: Vec<u64> = (lo..hi).collect();
        let mut val = vec![1.0; len];
        for (p, table) in &self.small {
            let p = *p;
            if p >= hi {
                break;
            }
            let mut m = lo.div_ceil(p) * p;
            while m < hi {
                let i = (m - lo) as usize;
                let mut k = 0;
                while rem[i] % p == 0 {
                    rem[i] /= p;
                    k += 1;
                }
                val[i] *= table[k];
                m += p;
            }
        }
        for i in 0..len {
            if rem[i] > 1 {
                val[i] *= self.large_prime(rem[i])?;
            }
        }
        Ok(val)
    }
}

/// Dirichlet coefficients of `L(s, f x f~)` up to `m_max`.
pub fn rs_coefficients(fd: &CuspFormData, m_max: u64) -> Result<RsCoefficients> {
    if m_max == 0 {
        return Err(Error::invalid("coefficient cutoff must be positive"));
    }
    let sieve = RsSieve::new(fd, m_max)?;
    let mut values = vec![0.0];
    values.extend(sieve.block(1, m_max + 1)?);
    Ok(RsCoefficients { values })
}

/// `prod_{p <= prime_bound} prod_{i,j} (1 - alpha_{p,i} conj(alpha_{p,j}) p^{-s})^{-1}`.
pub fn euler_product(fd: &CuspFormData, s: C64, prime_bound: u64) -> Result<C64> {
    if s.re <= 1.0 {
        return Err(Error::precondition(format!("the Euler product converges for Re(s) > 1, got {s}")));
    }
    let mut log = C64::new(0.0, 0.0);
    for p in primes_up_to(prime_bound) {
        let a = fd.satake_at(p)?;
        let x = (-s * (p as f64).ln()).exp();
        for ai in &a {
            for aj in &a {
                log -= (1.0 - ai * aj.conj() * x).ln();
            }
        }
    }
    Ok(log.exp())
}

/// Partial sums `sum_{m <= M} lambda(m) m^{-s}` at a fixed `s`.
#[derive(Clone, Debug)]
pub struct LSeriesAccumulator {
    pub s: C64,
    partial: Vec<C64>,
}

impl LSeriesAccumulator {
    pub fn new(coeffs: &RsCoefficients, s: C64) -> Self {
        let mut acc = C64::new(0.0, 0.0);
        let mut partial = vec![acc];
        for (i, c) in coeffs.as_slice().iter().enumerate() {
            acc += *c * (-s * ((i + 1) as f64).ln()).exp();
            partial.push(acc);
        }
        Self { s, partial }
    }

    pub fn partial_sum(&self, m: u64) -> C64 {
        self.partial[(m as usize).min(self.partial.len() - 1)]
    }

    pub fn value(&self) -> C64 {
        *self.partial.last().expect("partial sums start with 0")
    }
}
