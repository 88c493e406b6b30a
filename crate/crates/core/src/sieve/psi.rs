//! The Mellin test function `psi~` with prescribed zeros, and its inverse transform.
//!
//! `psi~(w) = Gamma(2n(R + w)) / Gamma(2nR) * prod_{j != k} ((e^{pi w / (a_j - a_k)} + 1) / 2)^order`
//! over ordered pairs with `a_j != a_k`. Each factor is the transform of averaging `y` with a
//! positive dilate, so `psi` stays positive.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::quad::adaptive;
use crate::special::ln_gamma;
use crate::{Error, Result, C64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiSpec {
    /// The large parameter `R`.
    pub r: f64,
    pub n: usize,
    /// Real Langlands parameters; the form has parameters `i * alpha`.
    pub alpha: Vec<f64>,
    /// Exponent of each pair factor.
    #[serde(default = "default_order")]
    pub order: u32,
    /// Half-width of the strip `|Re w| <= strip` where decay is claimed.
    #[serde(default = "default_strip")]
    pub strip: f64,
}

fn default_order() -> u32 {
    4
}

fn default_strip() -> f64 {
    0.5
}

impl PsiSpec {
    pub fn new(r: f64, alpha: Vec<f64>) -> Result<Self> {
        let spec = Self { r, n: alpha.len(), alpha, order: default_order(), strip: default_strip() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.alpha.len() != self.n {
            return Err(Error::Dimension(format!("expected {} parameters, got {}", self.n, self.alpha.len())));
        }
        if !(self.r > 0.0) || !self.alpha.iter().all(|a| a.is_finite()) {
            return Err(Error::invalid("R must be positive and the parameters finite"));
        }
        if !(self.strip >= 0.0 && self.strip < self.r) {
            return Err(Error::invalid(format!("strip half-width {} must lie in [0, R)", self.strip)));
        }
        Ok(())
    }

    /// `#{(j, k) : alpha_j = alpha_k}`, diagonal included.
    pub fn coincidences(&self) -> usize {
        self.alpha.iter().map(|a| self.alpha.iter().filter(|b| *b == a).count()).sum()
    }

    /// Nonzero differences `alpha_j - alpha_k` over ordered pairs.
    pub fn differences(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for a in &self.alpha {
            for b in &self.alpha {
                if a != b {
                    out.push(a - b);
                }
            }
        }
        out
    }

    /// `2^{order (n^2 - L)}`, the value of the unnormalised product at `w = 0`.
    pub fn normaliser(&self) -> f64 {
        2f64.powi((self.order as usize * (self.n * self.n - self.coincidences())) as i32)
    }
}

/// `psi~(w)`, normalised so that `psi~(0) = 1`.
pub fn psi_tilde(spec: &PsiSpec, w: C64) -> Result<C64> {
    let m = 2.0 * spec.n as f64;
    let z = m * (spec.r + w);
    let lg = ln_gamma(z)? - ln_gamma(C64::new(m * spec.r, 0.0))?;
    let mut value = lg.exp();
    for d in spec.differences() {
        value *= (((PI * w / d).exp() + 1.0) * 0.5).powu(spec.order);
    }
    Ok(value)
}

/// Half-length of the segment of `Re w = 0` outside which `|psi~| < 1e-16`.
fn truncation(spec: &PsiSpec) -> Result<f64> {
    // the gamma factor decays like e^{-pi n |v|} once past its power-law peak
    let mut v = 1.0;
    let mut prev = f64::INFINITY;
    loop {
        let a = psi_tilde(spec, C64::new(0.0, v))?.norm();
        let b = psi_tilde(spec, C64::new(0.0, -v))?.norm();
        let m = a.max(b);
        if m < 1e-16 && m <= prev {
            return Ok(v);
        }
        prev = m;
        v *= 1.25;
        if v > 1e6 {
            return Err(Error::Quadrature { estimate: m, tolerance: 1e-16 });
        }
    }
}

/// `psi(y) = (1 / 2 pi) int psi~(iv) y^{-iv} dv`.
pub fn psi_inverse_mellin(spec: &PsiSpec, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::invalid(format!("psi is defined for y > 0, got {y}")));
    }
    spec.validate()?;
    let v_max = truncation(spec)?;
    let ly = y.ln();
    let mut err = None;
    let f = |v: f64| match psi_tilde(spec, C64::new(0.0, v)) {
        Ok(p) => p * C64::from_polar(1.0, -v * ly),
        Err(e) => {
            err.get_or_insert(e);
            C64::new(0.0, 0.0)
        }
    };
    // psi~(-iv) = conj(psi~(iv)), so the integral is twice the real part over v > 0
    let out = adaptive(f, 0.0, v_max, 1e-15, 1e-12, 4000)?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(out.value.re / PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma_real;

    /// `psi(y)` in closed form: expand the product as `sum_k c_k e^{k w}` and invert
    /// `e^{k w} Gamma(2n(R + w))` term by term into dilates of `y^R exp(-y^{1/2n})`.
    fn psi_closed_form(spec: &PsiSpec, y: f64) -> f64 {
        let mut terms: Vec<(f64, f64)> = vec![(0.0, 1.0)];
        for d in spec.differences() {
            for _ in 0..spec.order {
                let mut next: Vec<(f64, f64)> = Vec::with_capacity(2 * terms.len());
                for (k, c) in &terms {
                    next.push((*k, *c));
                    next.push((k + PI / d, *c));
                }
                next.sort_by(|a, b| a.0.total_cmp(&b.0));
                terms.clear();
                for (k, c) in next {
                    match terms.last_mut() {
                        Some(last) if (last.0 - k).abs() < 1e-9 => last.1 += c,
                        _ => terms.push((k, c)),
                    }
                }
            }
        }
        let m = 2.0 * spec.n as f64;
        let big_psi = |u: f64| u.powf(spec.r) * (-u.powf(1.0 / m)).exp();
        let total: f64 = terms.iter().map(|(k, c)| c * big_psi((-k).exp() * y)).sum();
        total / (m * gamma_real(m * spec.r).unwrap() * spec.normaliser())
    }

    fn spec2() -> PsiSpec {
        PsiSpec::new(1.5, vec![0.7, -0.7]).unwrap()
    }

    #[test]
    fn normalised_at_zero_and_real_on_the_axis() {
        for spec in [spec2(), PsiSpec::new(1.0, vec![0.4, -0.1, -0.3]).unwrap(), PsiSpec::new(1.0, vec![0.2, 0.2, -0.4]).unwrap()] {
            assert!((psi_tilde(&spec, C64::new(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-10);
            assert!(psi_tilde(&spec, C64::new(0.3, 0.0)).unwrap().im.abs() < 1e-14);
        }
        let rep = PsiSpec::new(1.0, vec![0.2, 0.2, -0.4]).unwrap();
        assert_eq!(rep.coincidences(), 5);
        assert_eq!(rep.normaliser(), 2f64.powi(16));
    }

    #[test]
    fn zeros_at_parameter_differences() {
        let spec = PsiSpec::new(1.0, vec![0.4, -0.1, -0.3]).unwrap();
        for d in spec.differences() {
            let w = C64::new(0.0, d);
            assert!(psi_tilde(&spec, w).unwrap().norm() < 1e-30);
            // both ordered pairs vanish at i d, so the order is at least the configured one
            let (h1, h2) = (1e-2, 1e-3);
            let a = psi_tilde(&spec, w + h1).unwrap().norm();
            let b = psi_tilde(&spec, w + h2).unwrap().norm();
            let measured = (a / b).ln() / (h1 / h2).ln();
            assert!(measured >= spec.order as f64 - 0.05, "order {measured} at {d}");
        }
        let low = spec.clone().with_order(1);
        let d = spec.differences()[0];
        let ratio = psi_tilde(&low, C64::new(1e-4, d)).unwrap() / 1e-8;
        assert!(ratio.norm().is_finite() && ratio.norm() > 0.0);
    }

    #[test]
    fn exponential_decay_in_the_strip() {
        let spec = spec2();
        let mut c: f64 = 0.0;
        for i in -5..=5 {
            let x = spec.strip * i as f64 / 5.0;
            for j in -500..=500 {
                let y = j as f64 / 10.0;
                let v = psi_tilde(&spec, C64::new(x, y)).unwrap().norm();
                c = c.max(v * (spec.n as f64 * y.abs()).exp());
            }
        }
        assert!(c.is_finite() && c < 1e3, "fitted constant {c}");
    }

    #[test]
    fn inverse_matches_closed_form_and_is_positive() {
        let spec = spec2();
        for k in -12..=12 {
            let y = 10f64.powf(k as f64 / 4.0);
            let num = psi_inverse_mellin(&spec, y).unwrap();
            let exact = psi_closed_form(&spec, y);
            assert!(num >= -1e-9, "psi({y}) = {num}");
            assert!((num - exact).abs() < 1e-9 * (1.0 + exact.abs()), "y = {y}: {num} vs {exact}");
        }
        assert!(psi_inverse_mellin(&spec, 0.0).is_err());
    }

    #[test]
    fn forward_transform_recovers_psi_tilde() {
        // dilations reach e^{+-36}, well inside the integration range
        let spec = PsiSpec::new(1.0, vec![1.5, -0.5, -1.0]).unwrap();
        for w in [C64::new(0.0, 0.0), C64::new(0.2, 0.5), C64::new(-0.3, -1.1)] {
            // int psi(y) y^w dy / y with y = e^u
            let f = |u: f64| psi_closed_form(&spec, u.exp()) * (w * u).exp();
            let got = adaptive(f, -150.0, 150.0, 1e-13, 1e-11, 4000).unwrap().value;
            let want = psi_tilde(&spec, w).unwrap();
            assert!((got - want).norm() < 1e-6, "{w}: {got} vs {want}");
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(PsiSpec::new(0.0, vec![0.1, -0.1]).is_err());
        assert!(PsiSpec::new(0.3, vec![0.1, -0.1]).is_err());
        assert!(PsiSpec::new(1.0, vec![]).is_err());
    }
}
