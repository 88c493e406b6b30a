//! The completed L-function and `c_s = Lambda(2ns - n) / Lambda(1 + 2ns - n)`.

use super::afe::{afe_value_at, AfeConfig};
use super::coeffs::euler_product;
use super::gamma_factor::ln_gamma_factor_rs;
use super::CuspFormData;
use crate::{Result, C64};

/// From this real part on, `L` comes from its Euler product; below it from the AFE.
pub const EULER_CROSSOVER: f64 = 2.5;

/// Right of this real part `Lambda(w)` is evaluated directly, left of it through
/// `Lambda(w) = eps Lambda(1 - w)`.
const REFLECT_BELOW: f64 = 0.5;

/// `log Lambda(w, f x f~)` (imaginary part modulo `2 pi`).
pub fn ln_completed_l(fd: &CuspFormData, w: C64, cfg: &AfeConfig) -> Result<C64> {
    if w.re < REFLECT_BELOW {
        return Ok(fd.root_number.ln() + ln_completed_l(fd, 1.0 - w, cfg)?);
    }
    let l = if w.re >= EULER_CROSSOVER {
        let n2 = (fd.n * fd.n) as f64;
        let sigma = w.re - 1.0;
        let bound = (n2 / (sigma * 1e-13)).powf(1.0 / sigma).clamp(100.0, 2e6);
        euler_product(fd, w, bound as u64)?
    } else {
        afe_value_at(fd, w, 1.0, None, cfg)?.value
    };
    Ok(ln_gamma_factor_rs(fd, w)? + l.ln())
}

pub fn completed_l(fd: &CuspFormData, w: C64) -> Result<C64> {
    Ok(ln_completed_l(fd, w, &AfeConfig::default())?.exp())
}

pub fn c_ratio(fd: &CuspFormData, s: C64) -> Result<C64> {
    c_ratio_with(fd, s, &AfeConfig::default())
}

pub fn c_ratio_with(fd: &CuspFormData, s: C64, cfg: &AfeConfig) -> Result<C64> {
    let n = fd.n as f64;
    let top = ln_completed_l(fd, s * (2.0 * n) - n, cfg)?;
    let bottom = ln_completed_l(fd, s * (2.0 * n) - n + 1.0, cfg)?;
    Ok((top - bottom).exp())
}

/// `d c_s / ds` by the five-point central difference with step `h`, applied to
/// `log(c_{s+kh} / c_s)`. The phase of `c` turns quickly in `t` while its logarithm is
/// nearly linear, so differencing the logarithm keeps the error at the roundoff level.
pub fn c_ratio_derivative(fd: &CuspFormData, s: C64, h: f64) -> Result<C64> {
    let c0 = c_ratio(fd, s)?;
    let g = |k: f64| c_ratio(fd, s + k * h).map(|c| (c / c0).ln());
    Ok(c0 * (g(-2.0)? - 8.0 * g(-1.0)? + 8.0 * g(1.0)? - g(2.0)?) / (12.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::xi;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// For isobaric data `Lambda(w) = prod xi(w + d)`.
    fn xi_ratio(fd: &CuspFormData, s: C64) -> C64 {
        let n = fd.n as f64;
        let lam = |w: C64| -> C64 { fd.rs_shifts().iter().map(|d| xi(w + d).unwrap()).product() };
        lam(s * (2.0 * n) - n) / lam(s * (2.0 * n) - n + 1.0)
    }

    #[test]
    fn unimodular_on_the_critical_line() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for k in 0..20 {
            let fd = CuspFormData::random_isobaric(2, 2.0, 100 + k).unwrap();
            let s = C64::new(0.5, rng.random_range(0.5..6.0));
            let c = c_ratio(&fd, s).unwrap();
            assert!((c.norm() - 1.0).abs() < 1e-6, "s = {s}: |c| = {}", c.norm());
        }
    }

    #[test]
    fn matches_completed_zeta_product() {
        let fd = CuspFormData::random_isobaric(2, 2.0, 7).unwrap();
        for s in [C64::new(0.5, 1.3), C64::new(0.8, 2.0), C64::new(2.0, 0.0), C64::new(1.4, -0.6)] {
            let c = c_ratio(&fd, s).unwrap();
            let oracle = xi_ratio(&fd, s);
            assert!((c - oracle).norm() < 1e-8 * oracle.norm(), "s = {s}: {c} vs {oracle}");
        }
    }

    #[test]
    fn reflection_multiplies_to_one() {
        let fd = CuspFormData::random_isobaric(3, 1.5, 2).unwrap();
        for s in [C64::new(0.7, 1.9), C64::new(0.55, 2.6)] {
            let prod = c_ratio(&fd, s).unwrap() * c_ratio(&fd, 1.0 - s).unwrap();
            assert!((prod - 1.0).norm() < 1e-6, "{prod}");
        }
    }

    #[test]
    fn euler_regime_is_direct_division() {
        let fd = CuspFormData::random_sato_tate(2, 3).unwrap();
        let s = C64::new(2.0, 0.0);
        let direct = gamma_and_euler(&fd, 6.0) / gamma_and_euler(&fd, 7.0);
        let c = c_ratio(&fd, s).unwrap();
        assert!((c - direct).norm() < 1e-10 * direct.norm());
    }

    fn gamma_and_euler(fd: &CuspFormData, w: f64) -> C64 {
        let w = C64::new(w, 0.0);
        crate::lfun::gamma_factor_rs(fd, w).unwrap() * euler_product(fd, w, 2_000_000).unwrap()
    }

    #[test]
    fn derivative_matches_oracle() {
        let fd = CuspFormData::random_isobaric(2, 2.0, 9).unwrap();
        let s = C64::new(0.5, 1.7);
        let d = c_ratio_derivative(&fd, s, 1e-3).unwrap();
        let h = 1e-4;
        let oracle = (xi_ratio(&fd, s + h) - xi_ratio(&fd, s - h)) / (2.0 * h);
        assert!((d - oracle).norm() < 1e-6 * oracle.norm(), "{d} vs {oracle}");
    }
}
