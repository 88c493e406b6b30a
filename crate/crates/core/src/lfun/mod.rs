//! Rankin-Selberg L-functions `L(s, f x f~)` built from Satake data of a tempered form `f`
//! on GL(n): coefficients, gamma factor, approximate functional equation, the ratio `c_s`
//! and the Maass-Selberg evaluator.

pub mod afe;
pub mod coeffs;
pub mod gamma_factor;
pub mod maass_selberg;
pub mod ratio;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::matrix::SpectralParams;
use crate::sieve::primes_up_to;
use crate::{Error, Result, C64};

pub use afe::{afe_value, afe_value_at, v_star, v_star_majorant, AfeConfig, AfeReport, AfeWeight};
pub use coeffs::{euler_product, local_rs_coefficients, rs_coefficients, LSeriesAccumulator, RsCoefficients};
pub use gamma_factor::{gamma_factor_rs, ln_gamma_factor_rs};
pub use maass_selberg::{
    epsilon_limit, fourier_coeff_a1, maass_selberg, maass_selberg_limit, zero_free_region, EpsilonLimitReport,
    ZeroFreeRegion,
};
pub use ratio::{c_ratio, c_ratio_derivative, completed_l};

/// Where the Satake parameters `alpha_{p,i}` come from.
#[derive(Clone, Debug, PartialEq)]
pub enum SatakeSource {
    /// Explicit table; primes outside it are missing.
    Table(BTreeMap<u64, Vec<C64>>),
    /// Eigenvalues of a Haar-random `SU(n)` matrix, drawn from a stream keyed by `(seed, p)`.
    SatoTate { seed: u64 },
    /// `alpha_{p,i} = p^{-alpha_i}` with `alpha_i` the archimedean Langlands parameters. Then
    /// `L(s, f x f~) = prod_{i,j} zeta(s + alpha_i + conj(alpha_j))`, which has a genuine
    /// functional equation with root number 1.
    Isobaric,
}

/// Satake and archimedean data of a tempered form, plus the inputs taken as given (Petersson norm, root number).
#[derive(Clone, Debug, PartialEq)]
pub struct CuspFormData {
    pub n: usize,
    pub params: SpectralParams,
    pub satake: SatakeSource,
    /// Stored Hecke eigenvalues `lambda(m)`; primes not listed are derived from Satake data.
    pub hecke: BTreeMap<u64, C64>,
    pub petersson_norm: f64,
    pub root_number: C64,
}

/// Invariant tolerance for stored Satake data.
const SATAKE_TOL: f64 = 1e-9;

impl CuspFormData {
    pub fn new(params: SpectralParams, satake: SatakeSource, petersson_norm: f64, root_number: C64) -> Result<Self> {
        let fd = Self { n: params.n, params, satake, hecke: BTreeMap::new(), petersson_norm, root_number };
        fd.validate()?;
        Ok(fd)
    }

    /// A form whose Satake data is `p^{-alpha_i}`; `shifts` are the imaginary parts of the
    /// Langlands parameters and must sum to zero.
    pub fn isobaric(shifts: &[f64], petersson_norm: f64) -> Result<Self> {
        let alpha: Vec<C64> = shifts.iter().map(|b| C64::new(0.0, *b)).collect();
        Self::new(SpectralParams::from_langlands(&alpha)?, SatakeSource::Isobaric, petersson_norm, C64::new(1.0, 0.0))
    }

    /// Random tempered archimedean data (`|Im alpha_i| <= spread`) with isobaric Satake data.
    pub fn random_isobaric(n: usize, spread: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut shifts: Vec<f64> = (0..n).map(|_| rng.random_range(-spread..spread)).collect();
        let mean = shifts.iter().sum::<f64>() / n as f64;
        shifts.iter_mut().for_each(|b| *b -= mean);
        Self::isobaric(&shifts, rng.random_range(0.5..2.0))
    }

    /// Random tempered archimedean data with Sato-Tate Satake data.
    pub fn random_sato_tate(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a70_7a7e);
        let mut shifts: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let mean = shifts.iter().sum::<f64>() / n as f64;
        shifts.iter_mut().for_each(|b| *b -= mean);
        let alpha: Vec<C64> = shifts.iter().map(|b| C64::new(0.0, *b)).collect();
        Self::new(
            SpectralParams::from_langlands(&alpha)?,
            SatakeSource::SatoTate { seed },
            rng.random_range(0.5..2.0),
            C64::new(1.0, 0.0),
        )
    }

    /// Archimedean Langlands parameters.
    pub fn alpha(&self) -> &[C64] {
        &self.params.alpha
    }

    /// The `n^2` shifts `alpha_i + conj(alpha_j)` in the gamma factor of `f x f~`.
    pub fn rs_shifts(&self) -> Vec<C64> {
        let a = self.alpha();
        a.iter().flat_map(|x| a.iter().map(move |y| x + y.conj())).collect()
    }

    pub fn satake_at(&self, p: u64) -> Result<Vec<C64>> {
        match &self.satake {
            SatakeSource::Table(t) => {
                t.get(&p).cloned().ok_or_else(|| Error::Missing(format!("no Satake parameters at p = {p}")))
            }
            SatakeSource::SatoTate { seed } => Ok(sato_tate_sample(self.n, *seed, p)),
            SatakeSource::Isobaric => {
                let lp = (p as f64).ln();
                Ok(self.alpha().iter().map(|a| (-a * lp).exp()).collect())
            }
        }
    }

    /// `lambda(p)`: the stored value if present, otherwise the sum of the Satake parameters.
    pub fn hecke_at(&self, p: u64) -> Result<C64> {
        if let Some(v) = self.hecke.get(&p) {
            return Ok(*v);
        }
        Ok(self.satake_at(p)?.iter().sum())
    }

    /// `lambda_{f x f~}(p) = |lambda(p)|^2` computed from Satake data alone.
    pub fn rs_prime_coefficient(&self, p: u64) -> Result<f64> {
        Ok(self.satake_at(p)?.iter().sum::<C64>().norm_sqr())
    }

    /// Poles of `Lambda(w, f x f~)` with their orders. A cuspidal `f` gives simple poles at
    /// 0 and 1; an isobaric form has poles at `1 - d` and `-d` for every shift `d`.
    pub fn completed_poles(&self) -> Vec<(C64, usize)> {
        match self.satake {
            SatakeSource::Isobaric => {
                let mut poles: Vec<(C64, usize)> = Vec::new();
                for d in self.rs_shifts() {
                    for rho in [1.0 - d, -d] {
                        match poles.iter_mut().find(|(z, _)| (*z - rho).norm() < 1e-12) {
                            Some((_, k)) => *k += 1,
                            None => poles.push((rho, 1)),
                        }
                    }
                }
                poles
            }
            _ => vec![(C64::new(1.0, 0.0), 1), (C64::new(0.0, 0.0), 1)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.params.n != self.n {
            return Err(Error::Dimension(format!("degree {} with parameters for GL({})", self.n, self.params.n)));
        }
        if let Some(a) = self.alpha().iter().find(|a| a.re.abs() > SATAKE_TOL) {
            return Err(Error::invalid(format!("Langlands parameter {a} is not purely imaginary")));
        }
        if !(self.petersson_norm > 0.0 && self.petersson_norm.is_finite()) {
            return Err(Error::invalid(format!("Petersson norm must be positive, got {}", self.petersson_norm)));
        }
        if (self.root_number.norm() - 1.0).abs() > SATAKE_TOL {
            return Err(Error::invalid(format!("root number {} is not of modulus 1", self.root_number)));
        }
        if let SatakeSource::Table(t) = &self.satake {
            for (p, a) in t {
                check_satake(self.n, *p, a)?;
            }
        }
        for (m, v) in &self.hecke {
            if crate::sieve::is_prime(*m) {
                let from_satake: C64 = match &self.satake {
                    SatakeSource::Table(t) => match t.get(m) {
                        Some(a) => a.iter().sum(),
                        None => continue,
                    },
                    _ => self.satake_at(*m)?.iter().sum(),
                };
                if (from_satake - v).norm() > 1e-8 * (1.0 + v.norm()) {
                    return Err(Error::invalid(format!(
                        "lambda({m}) = {v} disagrees with the Satake sum {from_satake}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Freeze the Satake data at primes `<= prime_bound` into a serialisable document.
    pub fn to_document(&self, prime_bound: u64) -> Result<CuspFormDocument> {
        let mut satake = BTreeMap::new();
        let mut hecke = self.hecke.clone();
        for p in primes_up_to(prime_bound) {
            let a = self.satake_at(p)?;
            hecke.entry(p).or_insert_with(|| a.iter().sum());
            satake.insert(p, a);
        }
        Ok(CuspFormDocument {
            n: self.n,
            nu: self.params.nu.clone(),
            satake,
            hecke,
            petersson_norm: self.petersson_norm,
            root_number: Some(self.root_number),
        })
    }

    pub fn from_document(doc: CuspFormDocument) -> Result<Self> {
        let fd = Self {
            n: doc.n,
            params: SpectralParams::new(doc.n, doc.nu)?,
            satake: SatakeSource::Table(doc.satake),
            hecke: doc.hecke,
            petersson_norm: doc.petersson_norm,
            root_number: doc.root_number.unwrap_or(C64::new(1.0, 0.0)),
        };
        fd.validate()?;
        Ok(fd)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CuspFormDocument =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("cusp form JSON: {e}")))?;
        Self::from_document(doc)
    }
}

/// JSON layout of [`CuspFormData`]; complex numbers are `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspFormDocument {
    pub n: usize,
    pub nu: Vec<C64>,
    pub satake: BTreeMap<u64, Vec<C64>>,
    #[serde(default)]
    pub hecke: BTreeMap<u64, C64>,
    pub petersson_norm: f64,
    #[serde(default)]
    pub root_number: Option<C64>,
}

fn check_satake(n: usize, p: u64, a: &[C64]) -> Result<()> {
    if a.len() != n {
        return Err(Error::Dimension(format!("{} Satake parameters at p = {p}, expected {n}", a.len())));
    }
    if let Some(x) = a.iter().find(|x| (x.norm() - 1.0).abs() > SATAKE_TOL) {
        return Err(Error::invalid(format!("Satake parameter {x} at p = {p} is not of modulus 1")));
    }
    let prod: C64 = a.iter().product();
    if (prod - 1.0).norm() > SATAKE_TOL {
        return Err(Error::invalid(format!("Satake parameters at p = {p} multiply to {prod}, not 1")));
    }
    Ok(())
}

/// Eigenvalue angles of a Haar-random `SU(n)` element by rejection from the Weyl density
/// `prod |e^{i a_j} - e^{i a_k}|^2`, whose maximum on the torus is `n^n`.
fn sato_tate_sample(n: usize, seed: u64, p: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(p);
    let bound = (n as f64).powi(n as i32);
    loop {
        let mut angles: Vec<f64> = (0..n - 1).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        angles.push(-angles.iter().sum::<f64>());
        let pts: Vec<C64> = angles.iter().map(|a| C64::from_polar(1.0, *a)).collect();
        let mut weight = 1.0;
        for j in 0..n {
            for k in j + 1..n {
                weight *= (pts[j] - pts[k]).norm_sqr();
            }
        }
        if rng.random::<f64>() * bound <= weight {
            return pts;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sato_tate_data_is_tempered_and_unimodular() {
        for n in [2, 3, 4] {
            let fd = CuspFormData::random_sato_tate(n, 11).unwrap();
            for p in primes_up_to(200) {
                let a = fd.satake_at(p).unwrap();
                check_satake(n, p, &a).unwrap();
                assert!(fd.hecke_at(p).unwrap().norm() <= n as f64 + 1e-12);
            }
            // deterministic per prime
            assert_eq!(fd.satake_at(101).unwrap(), fd.satake_at(101).unwrap());
        }
    }

    #[test]
    fn sato_tate_trace_moments() {
        // for Haar measure on SU(2), E|tr|^2 = 1 and E|tr|^4 = 2
        let fd = CuspFormData::random_sato_tate(2, 4).unwrap();
        let ps = primes_up_to(200_000);
        let m2 = ps.iter().map(|p| fd.hecke_at(*p).unwrap().norm_sqr()).sum::<f64>() / ps.len() as f64;
        let m4 = ps.iter().map(|p| fd.hecke_at(*p).unwrap().norm_sqr().powi(2)).sum::<f64>() / ps.len() as f64;
        assert!((m2 - 1.0).abs() < 0.02, "{m2}");
        assert!((m4 - 2.0).abs() < 0.06, "{m4}");
    }

    #[test]
    fn isobaric_satake_and_poles() {
        let fd = CuspFormData::isobaric(&[1.5, -1.5], 1.0).unwrap();
        let a = fd.satake_at(7).unwrap();
        check_satake(2, 7, &a).unwrap();
        let expected = 2.0 * (1.5 * 7f64.ln()).cos();
        assert!((fd.hecke_at(7).unwrap() - expected).norm() < 1e-14);
        let poles = fd.completed_poles();
        let at_one = poles.iter().find(|(z, _)| (*z - 1.0).norm() < 1e-12).unwrap();
        assert_eq!(at_one.1, 2);
        assert_eq!(poles.iter().map(|(_, k)| k).sum::<usize>(), 8);
    }

    #[test]
    fn invariants_rejected() {
        let params = SpectralParams::from_langlands(&[C64::new(0.0, 1.0), C64::new(0.0, -1.0)]).unwrap();
        let mut t = BTreeMap::new();
        t.insert(2, vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        let bad = CuspFormData::new(params.clone(), SatakeSource::Table(t), 1.0, C64::new(1.0, 0.0));
        assert!(matches!(bad, Err(Error::Invalid(_))));
        let mut t = BTreeMap::new();
        t.insert(2, vec![C64::new(0.0, 1.0), C64::new(0.0, 1.0)]);
        assert!(CuspFormData::new(params.clone(), SatakeSource::Table(t), 1.0, C64::new(1.0, 0.0)).is_err());
        let nontempered = SpectralParams::new(2, vec![C64::new(0.7, 0.0)]).unwrap();
        assert!(CuspFormData::new(nontempered, SatakeSource::Isobaric, 1.0, C64::new(1.0, 0.0)).is_err());
        assert!(CuspFormData::new(params, SatakeSource::Isobaric, -1.0, C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn hecke_table_must_match_satake() {
        let fd = CuspFormData::random_sato_tate(3, 2).unwrap();
        let mut doc = fd.to_document(50).unwrap();
        CuspFormData::from_document(doc.clone()).unwrap();
        doc.hecke.insert(7, C64::new(9.0, 0.0));
        assert!(CuspFormData::from_document(doc).is_err());
    }

    #[test]
    fn json_round_trip_keeps_data() {
        let fd = CuspFormData::random_sato_tate(2, 8).unwrap();
        let doc = fd.to_document(30).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let back = CuspFormData::from_json(&text).unwrap();
        assert_eq!(back.satake_at(29).unwrap(), fd.satake_at(29).unwrap());
        assert!(back.satake_at(31).is_err());
        assert!(CuspFormData::from_json("{\"n\": 2}").is_err());
    }
}
