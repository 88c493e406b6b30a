//! Approximate functional equation for `L(s, f x f~)`.
//!
//! With `Lambda = gamma L` and a weight `G` holomorphic in a wide strip, `G(0) = 1`,
//!
//! `Lambda(s) = I_G(X, s) + eps I_G~(1/X, 1 - s)`,  `I_G(X, s) = gamma(s) sum lambda(m) m^{-s} V_s(m/X)`,
//!
//! where `V_s(y) = (1/2 pi i) int_(c) y^{-u} G(u) gamma(s+u)/gamma(s) du/u` and `G~(u) = G(-u)`.
//! The weight used here is `exp(a u^2 - i theta u)` times a polynomial vanishing at the poles
//! of `Lambda(s + u)`, so the residue terms are identically zero. The phase `theta` cancels the
//! exponential growth of the gamma ratio in the direction of `-Im s`, which keeps every
//! contour integrand of size O(1).

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coeffs::RsSieve;
use super::gamma_factor::ln_gamma_factor_rs;
use super::CuspFormData;
use crate::special::ln_gamma;
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AfeConfig {
    /// Smallest Gaussian width `a` in `exp(a u^2)`; raised automatically when the polynomial
    /// factor or the gamma ratio would make the contour integrand large.
    pub gauss: f64,
    /// Weights below this are dropped from the sums.
    pub tail_tol: f64,
    /// Largest allowed `log |G(u) gamma(w+u)/gamma(w)|` near the imaginary axis; rounding in
    /// the contour sums grows like `e^{max_log_integrand}`.
    pub max_log_integrand: f64,
    /// Cap on the number of Dirichlet terms in either sum.
    pub max_terms: u64,
}

impl Default for AfeConfig {
    fn default() -> Self {
        Self { gauss: 0.02, tail_tol: 1e-16, max_log_integrand: 8.0, max_terms: 60_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AfeReport {
    pub s: C64,
    pub x: f64,
    /// `L(s, f x f~)`.
    pub value: C64,
    pub first_piece: C64,
    pub dual_piece: C64,
    pub terms_first: u64,
    pub terms_dual: u64,
    /// Largest weight `|V|` beyond the last term kept, in either sum.
    pub tail_weight: f64,
    /// Gaussian width actually used.
    pub gauss: f64,
}

/// `L(1 + 2int, f x f~)` from the two sums; `m_max` caps the number of terms and raises an
/// error with the tail weight when the cut-off is too small.
pub fn afe_value(fd: &CuspFormData, t: f64, x: f64, m_max: Option<u64>, cfg: &AfeConfig) -> Result<AfeReport> {
    let s = C64::new(1.0, 2.0 * fd.n as f64 * t);
    afe_value_at(fd, s, x, m_max, cfg)
}

/// The balancing parameter `X = (|t| + 1)^{n^2/2}`.
pub fn default_x(n: usize, t: f64) -> f64 {
    (t.abs() + 1.0).powf((n * n) as f64 / 2.0)
}

pub fn afe_value_at(fd: &CuspFormData, s: C64, x: f64, m_max: Option<u64>, cfg: &AfeConfig) -> Result<AfeReport> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid(format!("X must be positive, got {x}")));
    }
    if !(cfg.gauss > 0.0) {
        return Err(Error::invalid("the Gaussian width must be positive"));
    }
    let shifts = fd.rs_shifts();
    // the dual weight must be G(-u), which is the weight built at 1 - s with the same width
    let ratio_s = GammaRatio::new(&shifts, s)?;
    let ratio_d = GammaRatio::new(&shifts, 1.0 - s)?;
    let mut w_s = weight_for(fd, &ratio_s, s, cfg)?;
    let mut w_d = weight_for(fd, &ratio_d, 1.0 - s, cfg)?;
    let a = w_s.a.max(w_d.a);
    w_s.a = a;
    w_d.a = a;
    let first = VTable::new(&ratio_s, w_s, s, -x.ln(), cfg)?;
    let dual = VTable::new(&ratio_d, w_d, 1.0 - s, x.ln(), cfg)?;
    let need_first = (x * first.l_end.exp()).floor().max(1.0);
    let need_dual = (first_term_count(dual.l_end, x)).max(0.0);
    let need = need_first.max(need_dual);
    let cap = m_max.unwrap_or(cfg.max_terms);
    if need > cap as f64 {
        let (tail, which) = if need_first > cap as f64 {
            (first.max_beyond(((cap as f64) / x).ln()), "first")
        } else {
            (dual.max_beyond((cap as f64 * x).ln()), "dual")
        };
        return Err(Error::precondition(format!(
            "cut-off M = {cap} is below the {need:.3e} terms needed; the {which} sum's weight at M is {tail:.3e}"
        )));
    }
    let n_first = need_first as u64;
    let n_dual = need_dual as u64;
    let sieve = RsSieve::new(fd, n_first.max(n_dual).max(1))?;
    let ln_x = x.ln();
    let first_piece = dirichlet_sum(&sieve, n_first, s, |lm| first.eval(lm - ln_x))?;
    let dual_sum = dirichlet_sum(&sieve, n_dual, 1.0 - s, |lm| dual.eval(lm + ln_x))?;
    let ratio = (ln_gamma_factor_rs(fd, 1.0 - s)? - ln_gamma_factor_rs(fd, s)?).exp();
    let dual_piece = fd.root_number * ratio * dual_sum;
    Ok(AfeReport {
        s,
        x,
        value: first_piece + dual_piece,
        first_piece,
        dual_piece,
        terms_first: n_first,
        terms_dual: n_dual,
        tail_weight: first.tail.max(dual.tail),
        gauss: first.weight.a.max(dual.weight.a),
    })
}

fn first_term_count(l_end: f64, x: f64) -> f64 {
    (l_end - x.ln()).exp().floor()
}

/// `sum_{m <= count} lambda(m) m^{-s} V(log m)`, summed block by block.
fn dirichlet_sum<F: Fn(f64) -> C64 + Sync>(sieve: &RsSieve, count: u64, s: C64, v: F) -> Result<C64> {
    const BLOCK: u64 = 1 << 16;
    let starts: Vec<u64> = (0..count.div_ceil(BLOCK)).map(|b| 1 + b * BLOCK).collect();
    let parts: Vec<Result<C64>> = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + BLOCK).min(count + 1);
            let coeffs = sieve.block(lo, hi)?;
            let mut acc = C64::new(0.0, 0.0);
            for (i, c) in coeffs.iter().enumerate() {
                if *c == 0.0 {
                    continue;
                }
                let lm = ((lo + i as u64) as f64).ln();
                acc += *c * (-s * lm).exp() * v(lm);
            }
            Ok(acc)
        })
        .collect();
    parts.into_iter().sum()
}

/// `G(u) = exp(a u^2 - i theta u) prod_z (1 - u/z)^k`.
#[derive(Clone, Debug)]
struct Weight {
    a: f64,
    theta: f64,
    zeros: Vec<(C64, usize)>,
}

impl Weight {
    fn ln_eval(&self, u: C64) -> C64 {
        let mut acc = u * u * self.a - C64::new(0.0, self.theta) * u;
        for (z, k) in &self.zeros {
            acc += (1.0 - u / z).ln() * *k as f64;
        }
        acc
    }
}

/// `log(gamma(w + u) / gamma(w))` with the denominator cached.
struct GammaRatio<'a> {
    shifts: &'a [C64],
    w: C64,
    base: C64,
}

impl<'a> GammaRatio<'a> {
    fn new(shifts: &'a [C64], w: C64) -> Result<Self> {
        let mut base = C64::new(0.0, 0.0);
        for d in shifts {
            base += ln_gamma((w + d) * 0.5)?;
        }
        Ok(Self { shifts, w, base })
    }

    fn ln(&self, u: C64) -> Result<C64> {
        let n2 = self.shifts.len() as f64;
        let mut acc = -u * (n2 / 2.0 * PI.ln()) - self.base;
        for d in self.shifts {
            acc += ln_gamma((self.w + u + d) * 0.5)?;
        }
        Ok(acc)
    }

    /// `log sqrt(q)` for the analytic conductor at `w`, used to place contours.
    fn ln_sqrt_q(&self) -> f64 {
        0.5 * self.shifts.iter().map(|d| ((self.w + d).norm() / (2.0 * PI)).max(1.0).ln()).sum::<f64>()
    }
}

/// The weight for the point `w`, with the Gaussian widened until `|G(u) gamma(w+u)/gamma(w)|`
/// stays below `e^{max_log_integrand}` near the imaginary axis.
fn weight_for(fd: &CuspFormData, ratio: &GammaRatio, w: C64, cfg: &AfeConfig) -> Result<Weight> {
    let n2 = (fd.n * fd.n) as f64;
    let theta = PI / 4.0 * n2 * w.im.signum() * if w.im == 0.0 { 0.0 } else { 1.0 };
    let mut zeros = Vec::new();
    for (rho, k) in fd.completed_poles() {
        let z = rho - w;
        if z.norm() < 1e-10 {
            return Err(Error::Pole { func: "completed Rankin-Selberg L-function", at: format!("{w}") });
        }
        zeros.push((z, k));
    }
    let mut weight = Weight { a: cfg.gauss, theta, zeros };
    let probe: Vec<(C64, C64)> = (-400..=400)
        .map(|k| {
            let u = C64::new(0.5, k as f64 * 0.25);
            Ok((u, ratio.ln(u)?))
        })
        .collect::<Result<_>>()?;
    for _ in 0..40 {
        let peak = probe.iter().map(|(u, r)| (weight.ln_eval(*u) + r).re).fold(f64::NEG_INFINITY, f64::max);
        if peak <= cfg.max_log_integrand {
            return Ok(weight);
        }
        weight.a *= 1.25;
    }
    Err(Error::precondition(format!(
        "{w} is too close to a pole of the completed L-function for the contour weight"
    )))
}

const CHEB_DEGREE: usize = 24;

/// `V_w(e^L)` tabulated as piecewise Chebyshev series in `L`, from `l_start` up to the point
/// where it falls below the tail tolerance.
struct VTable {
    weight: Weight,
    l_start: f64,
    width: f64,
    panels: Vec<Vec<C64>>,
    /// End of the last panel.
    l_end: f64,
    /// Largest `|V|` on the last panel.
    tail: f64,
}

impl VTable {
    fn new(ratio: &GammaRatio, weight: Weight, w: C64, l_start: f64, cfg: &AfeConfig) -> Result<Self> {
        let ln_sq = ratio.ln_sqrt_q();
        let width = 1.5 * weight.a.sqrt();
        let mut panels = Vec::new();
        let mut left = l_start;
        let nodes: Vec<f64> =
            (0..=CHEB_DEGREE).map(|j| (PI * (j as f64 + 0.5) / (CHEB_DEGREE + 1) as f64).cos()).collect();
        let max_panels = 4000;
        loop {
            let center = left + width / 2.0;
            let contour = Contour::new(ratio, &weight, w, saddle(ratio, &weight, w, center)?, center)?;
            let values: Vec<C64> = nodes.iter().map(|x| contour.eval(center + x * width / 2.0)).collect();
            let coeffs = cheb_coefficients(&values);
            let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            panels.push(coeffs);
            left += width;
            if (peak < cfg.tail_tol && center > ln_sq) || panels.len() >= max_panels {
                if panels.len() >= max_panels {
                    return Err(Error::precondition(format!("weight V did not decay below {} by log y = {left}", cfg.tail_tol)));
                }
                return Ok(Self { weight, l_start, width, panels, l_end: left, tail: peak });
            }
        }
    }

    fn eval(&self, l: f64) -> C64 {
        let pos = (l - self.l_start) / self.width;
        if pos < 0.0 || pos >= self.panels.len() as f64 {
            return C64::new(0.0, 0.0);
        }
        let idx = pos.floor() as usize;
        let x = 2.0 * (pos - idx as f64) - 1.0;
        clenshaw(&self.panels[idx], x)
    }

    /// Largest `|V|` sampled on `[l, l_end]`.
    fn max_beyond(&self, l: f64) -> f64 {
        let mut best: f64 = 0.0;
        let mut x = l;
        while x < self.l_end {
            best = best.max(self.eval(x).norm());
            x += self.width / 4.0;
        }
        best
    }
}

/// The real point where the contour integrand for `V_w(e^l)` is smallest, located on the
/// side given by the Gaussian approximation and refined against the full gamma ratio.
fn saddle(ratio: &GammaRatio, weight: &Weight, w: C64, l: f64) -> Result<f64> {
    let guess = (l - ratio.ln_sqrt_q()) / (2.0 * weight.a);
    let lo = if w.re > 0.2 { -w.re.min(2.0) / 2.0 } else { 0.5 - w.re.min(0.0) };
    let (a, b) = if guess > 0.4 {
        (lo.max(0.4), guess.max(lo.max(0.4)))
    } else if lo < -0.4 {
        (lo, (-0.4f64).min(guess.max(lo)).max(lo).min(-0.4))
    } else {
        return Ok(guess);
    };
    if b - a < 1e-3 {
        return Ok(a);
    }
    let phi = |c: f64| -> Result<f64> {
        let u = C64::new(c, 0.0);
        Ok((weight.ln_eval(u) + ratio.ln(u)?).re - c.abs().ln() - c * l)
    };
    let grid = 48;
    let mut best = (a, phi(a)?);
    for k in 1..=grid {
        let c = a + (b - a) * k as f64 / grid as f64;
        let v = phi(c)?;
        if v < best.1 {
            best = (c, v);
        }
    }
    let step = (b - a) / grid as f64;
    let (mut x0, mut x1) = ((best.0 - step).max(a), (best.0 + step).min(b));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..30 {
        let (m1, m2) = (x1 - g * (x1 - x0), x0 + g * (x1 - x0));
        if phi(m1)? < phi(m2)? {
            x1 = m2;
        } else {
            x0 = m1;
        }
    }
    Ok(0.5 * (x0 + x1))
}

/// Trapezoid rule on `Re u = c` with nodes `u_k` and `log(G(u_k) gamma ratio / u_k)` cached.
struct Contour {
    nodes: Vec<(C64, C64)>,
    h: f64,
    residue: f64,
}

impl Contour {
    fn new(ratio: &GammaRatio, weight: &Weight, w: C64, saddle: f64, l_ref: f64) -> Result<Self> {
        let re_w = w.re;
        let lo = if re_w > 0.2 { -re_w.min(2.0) / 2.0 } else { 0.5 - re_w.min(0.0) };
        let mut c = saddle.max(lo);
        if c.abs() < 0.4 {
            c = if lo <= -0.4 && saddle < 0.0 { -0.4 } else { 0.4_f64.max(lo) };
        }
        let delta = 1.0f64.min(c.abs()).min(c + re_w);
        let h = delta / 8.0;
        let term = |v: f64| -> Result<(C64, C64)> {
            let u = C64::new(c, v);
            Ok((u, weight.ln_eval(u) + ratio.ln(u)? - u.ln()))
        };
        let mut nodes = vec![term(0.0)?];
        let mut peak = (nodes[0].1 - nodes[0].0 * l_ref).re;
        for dir in [1.0, -1.0] {
            let mut quiet = 0;
            let mut k = 1;
            while quiet < 12 && k < 400_000 {
                let node = term(dir * k as f64 * h)?;
                let size = (node.1 - node.0 * l_ref).re;
                peak = peak.max(size);
                quiet = if size < peak - 46.0 && (k as f64 * h) > 2.0 { quiet + 1 } else { 0 };
                nodes.push(node);
                k += 1;
            }
        }
        Ok(Self { nodes, h, residue: if c < 0.0 { 1.0 } else { 0.0 } })
    }

    fn eval(&self, l: f64) -> C64 {
        let sum: C64 = self.nodes.iter().map(|(u, g)| (g - u * l).exp()).sum();
        sum * (self.h / (2.0 * PI)) + self.residue
    }
}

fn cheb_coefficients(values: &[C64]) -> Vec<C64> {
    let n = values.len();
    (0..n)
        .map(|k| {
            let s: C64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * (PI * k as f64 * (j as f64 + 0.5) / n as f64).cos())
                .sum();
            s * (if k == 0 { 1.0 } else { 2.0 } / n as f64)
        })
        .collect()
}

fn clenshaw(c: &[C64], x: f64) -> C64 {
    let (mut b1, mut b2) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for ck in c.iter().skip(1).rev() {
        let b = ck + b1 * (2.0 * x) - b2;
        b2 = b1;
        b1 = b;
    }
    c[0] + b1 * x - b2
}

/// Contour weights for the `V*` integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum AfeWeight {
    /// `cos(pi u / 400)^{-exponent}`.
    CosPower { exponent: f64 },
    /// `exp(a u^2 - i theta u)` with `theta = (pi/4) n^2 sgn(Im s)`.
    GaussianPhase { a: f64 },
}

impl AfeWeight {
    /// The majorant weight `cos(pi u/400)^{-4 n^3}`.
    pub fn cos_power(n: usize) -> Self {
        AfeWeight::CosPower { exponent: 4.0 * (n * n * n) as f64 }
    }

    fn ln_eval(&self, n: usize, s: C64, u: C64) -> C64 {
        match *self {
            AfeWeight::CosPower { exponent } => -(u * (PI / 400.0)).cos().ln() * exponent,
            AfeWeight::GaussianPhase { a } => {
                let theta = PI / 4.0 * (n * n) as f64 * if s.im == 0.0 { 0.0 } else { s.im.signum() };
                u * u * a - C64::new(0.0, theta) * u
            }
        }
    }
}

/// Integrand samples of `y^{-u} G(u) gamma(s+u)/gamma(s) / u^2` on `Re u = c`, as logs
/// without the `y` factor.
fn v_star_nodes(fd: &CuspFormData, s: C64, c: f64, weight: AfeWeight) -> Result<(Vec<(C64, C64)>, f64)> {
    let shifts = fd.rs_shifts();
    let ratio = GammaRatio::new(&shifts, s)?;
    let delta = 1.0f64.min(c).min(c + s.re);
    if delta <= 0.0 {
        return Err(Error::precondition(format!("contour Re u = {c} is left of a pole")));
    }
    let h = delta / 8.0;
    let term = |v: f64| -> Result<(C64, C64)> {
        let u = C64::new(c, v);
        Ok((u, weight.ln_eval(fd.n, s, u) + ratio.ln(u)? - 2.0 * u.ln()))
    };
    let mut nodes = vec![term(0.0)?];
    let mut peak = nodes[0].1.re;
    for dir in [1.0, -1.0] {
        let mut quiet = 0;
        let mut k = 1;
        while quiet < 12 && k < 400_000 {
            let node = term(dir * k as f64 * h)?;
            peak = peak.max(node.1.re);
            quiet = if node.1.re < peak - 46.0 && (k as f64 * h) > 2.0 { quiet + 1 } else { 0 };
            nodes.push(node);
            k += 1;
        }
    }
    Ok((nodes, h))
}

/// `V*_s(y) = (1/2 pi i) int_(c) y^{-u} G(u) gamma(s+u)/gamma(s) du/u^2` for any `c > 0`.
/// The line is picked from a few candidates to minimise the integral of the modulus, which
/// keeps rounding below the size of the result for large `y`.
pub fn v_star(fd: &CuspFormData, s: C64, y: f64, weight: AfeWeight) -> Result<C64> {
    if !(y > 0.0) {
        return Err(Error::invalid(format!("y must be positive, got {y}")));
    }
    let ly = y.ln();
    let mut best: Option<(f64, C64)> = None;
    for c in [1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 16.0, 20.0, 25.0, 30.0] {
        let (nodes, h) = v_star_nodes(fd, s, c, weight)?;
        let mut sum = C64::new(0.0, 0.0);
        let mut mass = 0.0;
        for (u, g) in &nodes {
            let z = (g - u * ly).exp();
            sum += z;
            mass += z.norm();
        }
        if best.map_or(true, |(m, _)| mass < m) {
            best = Some((mass, sum * (h / (2.0 * PI))));
        }
    }
    Ok(best.expect("candidate lines are nonempty").1)
}

/// The constant `C_K` in `|V*_s(y)| <= C_K (y / sqrt(q))^{-K}` obtained by moving the contour
/// to `Re u = K`, with `q = (|t| + 1)^{n^2}` and `s = sigma + 2int`.
pub fn v_star_majorant(fd: &CuspFormData, s: C64, k: f64, weight: AfeWeight) -> Result<f64> {
    let (nodes, h) = v_star_nodes(fd, s, k, weight)?;
    let t = s.im / (2.0 * fd.n as f64);
    let ln_q = ((fd.n * fd.n) as f64) * (t.abs() + 1.0).ln();
    let integral: f64 = nodes.iter().map(|(_, g)| g.re.exp()).sum::<f64>() * h / (2.0 * PI);
    Ok(integral * (-k * ln_q / 2.0).exp())
}
