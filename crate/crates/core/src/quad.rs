//! Quadrature for complex-valued integrands.
//!
//! Adaptive Gauss-Kronrod (7/15) is the workhorse; a level-halving tanh-sinh rule and a
//! trapezoidal circle rule cover endpoint singularities and residues.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Cut-off for integrals over unbounded ranges, in the natural variable of the caller.
    pub truncation_radius: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-10, max_subdivisions: 400, truncation_radius: 40.0 }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, max_subdivisions: usize, truncation_radius: f64) -> Result<Self> {
        let q = Self { rel_tol, max_subdivisions, truncation_radius };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::invalid(format!("rel_tol must lie in (0, 1e-2], got {}", self.rel_tol)));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::invalid(format!(
                "max_subdivisions must be at least 8, got {}",
                self.max_subdivisions
            )));
        }
        if !(self.truncation_radius > 0.0) {
            return Err(Error::invalid("truncation_radius must be positive"));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Integral {
    pub value: C64,
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> C64>(f: &mut F, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

struct Piece {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive Gauss-Kronrod on a finite interval. Stops when the summed error estimate is
/// below `max(abs_tol, rel_tol * |I|)`.
pub fn adaptive<F: FnMut(f64) -> C64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<Integral> {
    if a == b {
        return Ok(Integral { value: C64::new(0.0, 0.0), error: 0.0, evaluations: 0 });
    }
    let mut heap = BinaryHeap::new();
    let (v, e) = gk15(&mut f, a, b);
    heap.push(Piece { a, b, value: v, error: e });
    let mut total = v;
    let mut err = e;
    let mut evals = 15;
    let mut pieces = 1;
    loop {
        let tol = abs_tol.max(rel_tol * total.norm());
        if err <= tol {
            break;
        }
        if pieces >= max_subdivisions {
            return Err(Error::Quadrature { estimate: err, tolerance: tol });
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // interval can no longer be split in floating point
            return Err(Error::Quadrature { estimate: err, tolerance: tol });
        }
        let (v1, e1) = gk15(&mut f, worst.a, m);
        let (v2, e2) = gk15(&mut f, m, worst.b);
        evals += 30;
        pieces += 1;
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Piece { a: worst.a, b: m, value: v1, error: e1 });
        heap.push(Piece { a: m, b: worst.b, value: v2, error: e2 });
    }
    // re-add in interval order so the result does not depend on heap layout
    let mut parts: Vec<Piece> = heap.into_vec();
    parts.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = parts.iter().fold(C64::new(0.0, 0.0), |s, p| s + p.value);
    let error = parts.iter().map(|p| p.error).sum();
    Ok(Integral { value, error, evaluations: evals })
}

/// `int_a^inf f`, via `x = a + t / (1 - t)`.
pub fn half_line<F: FnMut(f64) -> C64>(
    mut f: F,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<Integral> {
    adaptive(
        |t| {
            let d = 1.0 - t;
            let v = f(a + t / d);
            if v.re == 0.0 && v.im == 0.0 {
                v
            } else {
                v / (d * d)
            }
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
        max_subdivisions,
    )
}

/// `int_{-inf}^{inf} f`, split at zero.
pub fn whole_line<F: FnMut(f64) -> C64>(
    mut f: F,
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<Integral> {
    let right = half_line(&mut f, 0.0, abs_tol * 0.5, rel_tol, max_subdivisions)?;
    let left = half_line(|x| f(-x), 0.0, abs_tol * 0.5, rel_tol, max_subdivisions)?;
    Ok(Integral {
        value: right.value + left.value,
        error: right.error + left.error,
        evaluations: right.evaluations + left.evaluations,
    })
}

/// Tanh-sinh rule on `[a, b]` with step halving until successive levels agree to `rel_tol`.
/// Tolerates integrable endpoint singularities.
pub fn tanh_sinh<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, rel_tol: f64, max_level: usize) -> Result<Integral> {
    let c = 0.5 * (a + b);
    let h_half = 0.5 * (b - a);
    // at t = 4.5 the nodes sit ~1e-60 from the ends
    let t_max = 4.5;
    let mut evals = 1;
    let mut sum = f(c) * FRAC_PI_2;
    let mut h = 1.0;
    let mut prev: Option<C64> = None;
    let mut level = 0;
    // (1 - |x|, weight) at abscissa t; 1 - tanh(u) is formed without cancellation
    let node = |t: f64| -> (f64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let ch = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (ch * ch);
        let dist = 1.0 / (u.exp() * ch);
        (dist, w)
    };
    loop {
        let step = if level == 0 { 1.0 } else { 2.0 };
        let mut t = h;
        let mut add = C64::new(0.0, 0.0);
        while t <= t_max {
            let (dist, w) = node(t);
            if w < 1e-300 {
                break;
            }
            let xr = b - h_half * dist;
            let xl = a + h_half * dist;
            // each side separately: a node that rounds onto one end says nothing about the other
            if xl > a && xl < c {
                add += f(xl) * w;
                evals += 1;
            }
            if xr < b && xr > c {
                add += f(xr) * w;
                evals += 1;
            }
            t += step * h;
        }
        sum += add;
        let est = sum * h * h_half;
        if let Some(p) = prev {
            let diff = (est - p).norm();
            if diff <= rel_tol * est.norm() || diff == 0.0 {
                return Ok(Integral { value: est, error: diff, evaluations: evals });
            }
            if level >= max_level {
                return Err(Error::Quadrature { estimate: diff, tolerance: rel_tol * est.norm() });
            }
        }
        prev = Some(est);
        level += 1;
        h *= 0.5;
    }
}

/// `(1 / 2 pi i) * contour integral of f` around the circle `|z - center| = radius`, by the
/// trapezoidal rule, which converges geometrically for functions analytic near the circle.
pub fn circle_residue<F: FnMut(C64) -> C64>(mut f: F, center: C64, radius: f64, nodes: usize) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..nodes {
        let th = 2.0 * PI * (k as f64) / (nodes as f64);
        let e = C64::from_polar(radius, th);
        acc += f(center + e) * e;
    }
    acc / nodes as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn polynomial_is_exact() {
        let r = adaptive(|x| c(x.powi(6) - 3.0 * x), -1.0, 2.0, 1e-14, 1e-14, 50).unwrap();
        let exact = (2f64.powi(7) + 1.0) / 7.0 - 1.5 * (4.0 - 1.0);
        assert!((r.value.re - exact).abs() < 1e-12);
    }

    #[test]
    fn gaussian_on_the_line() {
        let r = whole_line(|x| c((-x * x).exp()), 1e-14, 1e-13, 200).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn oscillating_half_line() {
        // int_0^inf e^{-x} e^{ix} dx = 1 / (1 - i)
        let r = half_line(|x| C64::from_polar((-x).exp(), x), 0.0, 1e-14, 1e-13, 400).unwrap();
        let exact = C64::new(1.0, 0.0) / C64::new(1.0, -1.0);
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // int_0^1 x^{-1/2} = 2
        let r = tanh_sinh(|x| c(1.0 / x.sqrt()), 0.0, 1.0, 1e-12, 12).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-10, "{:?}", r);
    }

    #[test]
    fn residue_of_simple_pole() {
        let r = circle_residue(|z| C64::new(3.0, 1.0) / (z - C64::new(0.5, 0.5)), C64::new(0.5, 0.5), 0.3, 64);
        assert!((r - C64::new(3.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.1, 100, 1.0).is_err());
        assert!(QuadratureSpec::new(1e-8, 4, 1.0).is_err());
        assert!(QuadratureSpec::new(1e-8, 16, 1.0).is_ok());
    }
}
