//! Invariant suites behind `rankin verify`. Each suite is a reduced-size version of the
//! library's own checks so that `verify all` finishes in a few minutes on one core.

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use rankin_core::coset::{enumerate_coset_reps, same_coset, same_coset_oracle, sl_pool, verify_height_contraction};
use rankin_core::lfun::afe::default_x;
use rankin_core::lfun::{afe_value, epsilon_limit, AfeConfig};
use rankin_core::matrix::{iwasawa_decompose, minor, subsets, IntMatrix, MinorIndex};
use rankin_core::quad::adaptive;
use rankin_core::sieve::{eta_lower_density, mellin_cutoff, overlap_density, psi_inverse_mellin, psi_tilde};
use rankin_core::special::{whittaker_direct, whittaker_mellin_norm, whittaker_stade, zeta};
use rankin_core::theta::{
    eisenstein_completed, eisenstein_coset_sum, exponent_identity_half, exponent_identity_weighted,
    transpose_inverse_coords,
};
use rankin_core::{CuspFormData, IwasawaCoords, LatticeEnumSpec, ParabolicKind, PsiSpec, QuadratureSpec, SpectralParams, C64};

use crate::report::{num, text, Report};

pub const SUITES: [&str; 6] = ["matrix", "coset", "special", "theta", "lfun", "sieve"];

pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// A check that passes when `value < bound`.
fn below(name: &'static str, value: f64, bound: f64) -> Check {
    Check { name, value, bound, pass: value < bound }
}

/// A check that passes when `value >= bound`.
fn at_least(name: &'static str, value: f64, bound: f64) -> Check {
    Check { name, value, bound, pass: value >= bound }
}

pub fn run(suite: &str) -> Result<Report> {
    let chosen: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => bail!("unknown suite {other:?}; expected all or one of {}", SUITES.join(", ")),
    };
    let mut r = Report::new(&["suite", "check", "value", "bound", "pass"]);
    for s in chosen {
        let checks = match s {
            "matrix" => matrix()?,
            "coset" => coset()?,
            "special" => special()?,
            "theta" => theta()?,
            "lfun" => lfun()?,
            _ => sieve()?,
        };
        for c in checks {
            r.push(vec![text(s), text(c.name), num(c.value), num(c.bound), Value::Bool(c.pass)]);
            r.check(c.pass, || format!("{s}/{}: {} against bound {}", c.name, c.value, c.bound));
        }
    }
    Ok(r)
}

fn random_point(k: usize, rng: &mut ChaCha8Rng) -> Result<IwasawaCoords> {
    let x = (0..k * (k - 1) / 2).map(|_| rng.random_range(-0.5..0.5)).collect();
    let y = (0..k - 1).map(|_| rng.random_range(1.0..2.0)).collect();
    Ok(IwasawaCoords::new(k, x, y)?)
}

fn matrix() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut roundtrip: f64 = 0.0;
    for k in 2..=5 {
        let z = random_point(k, &mut rng)?;
        roundtrip = roundtrip.max(iwasawa_decompose(&z.to_matrix())?.max_rel_diff(&z));
    }
    let mut mismatches = 0usize;
    for two_n in [2, 4, 6] {
        for k in 1..=two_n {
            let (l, r) = exponent_identity_half(two_n, k)?;
            mismatches += (l != r) as usize;
            let (l, r) = exponent_identity_weighted(two_n, k)?;
            mismatches += (l != r) as usize;
        }
    }
    let mut cb = 0usize;
    for _ in 0..20 {
        let a = IntMatrix::from_fn(4, 4, |_, _| rng.random_range(-3..=3));
        let b = IntMatrix::from_fn(4, 4, |_, _| rng.random_range(-3..=3));
        let ab = &a * &b;
        let all = subsets(4, 2);
        let (rows, cols) = (all[rng.random_range(0..all.len())].clone(), all[rng.random_range(0..all.len())].clone());
        let lhs = minor(&ab, &MinorIndex::new(rows.clone(), cols.clone())?)?;
        let mut rhs = None;
        for k in &all {
            let term = minor(&a, &MinorIndex::new(rows.clone(), k.clone())?)? * minor(&b, &MinorIndex::new(k.clone(), cols.clone())?)?;
            rhs = Some(match rhs {
                None => term,
                Some(acc) => acc + term,
            });
        }
        cb += (Some(lhs) != rhs) as usize;
    }
    Ok(vec![
        below("iwasawa_roundtrip", roundtrip, 1e-10),
        below("exponent_identity_mismatches", mismatches as f64, 0.5),
        below("cauchy_binet_mismatches", cb as f64, 0.5),
    ])
}

fn coset() -> Result<Vec<Check>> {
    let mut disagreements = 0usize;
    for (n, m) in [(2, 1), (3, 1), (3, 2), (4, 1)] {
        let pool = sl_pool(n, m, 20, 3, 40 + n as u64 * 10 + m as u64)?;
        for a in &pool {
            for b in &pool {
                disagreements += (same_coset(a, b, m)? != same_coset_oracle(a, b, ParabolicKind::Tilde, m)?) as usize;
            }
        }
    }
    let reps = enumerate_coset_reps(&LatticeEnumSpec::maximal(4, 2, 2))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0usize;
    for _ in 0..5 {
        violations += verify_height_contraction(&random_point(4, &mut rng)?, &reps)?.violations.len();
    }
    Ok(vec![
        below("signature_oracle_disagreements", disagreements as f64, 0.5),
        below("height_contraction_violations", violations as f64, 0.5),
    ])
}

fn special() -> Result<Vec<Check>> {
    let q = QuadratureSpec::default().with_rel_tol(1e-11);
    let mut worst: f64 = 0.0;
    for (nu, y) in [(C64::new(0.8, 0.0), 1.3), (C64::new(0.7, 2.0), 0.6)] {
        let p = SpectralParams::new(2, vec![nu])?;
        let w = whittaker_stade(&p, &[y], &q)?.uncompleted_value()?;
        let d = whittaker_direct(&p, &[y], &q)?;
        worst = worst.max((w - d).norm() / d.norm());
    }
    let beta = [C64::new(0.0, 2.0), C64::new(0.0, -2.0)];
    let p = SpectralParams::from_langlands(&beta)?;
    let w = C64::new(1.0, 1.0);
    let closed = whittaker_mellin_norm(2, &beta, w)?;
    let mut failed = None;
    let num_value = adaptive(
        |x: f64| {
            let y = x.exp();
            match whittaker_stade(&p, &[y], &q).and_then(|e| e.uncompleted_value()) {
                Ok(v) => v.norm_sqr() * (w * x).exp() / y,
                Err(e) => {
                    failed = Some(e);
                    C64::new(0.0, 0.0)
                }
            }
        },
        -45.0,
        2.5,
        0.0,
        1e-10,
        2000,
    )?
    .value;
    if let Some(e) = failed {
        return Err(e.into());
    }
    Ok(vec![
        below("whittaker_gl2_vs_definition", worst, 1e-6),
        below("mellin_norm_vs_quadrature", (closed - num_value).norm() / closed.norm(), 1e-5),
    ])
}

fn theta() -> Result<Vec<Check>> {
    let q = QuadratureSpec::default().with_rel_tol(1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut fe: f64 = 0.0;
    for _ in 0..2 {
        let z = random_point(4, &mut rng)?;
        let s = C64::new(0.6, 0.3);
        let a = eisenstein_completed(&z, s, &q)?;
        let b = eisenstein_completed(&transpose_inverse_coords(&z)?, 1.0 - s, &q)?;
        fe = fe.max((a - b).norm() / a.norm());
    }
    let z = random_point(4, &mut rng)?;
    let s = C64::new(3.0, 0.0);
    let t = eisenstein_completed(&z, s, &q)?;
    let c = eisenstein_coset_sum(&z, s, 3)?;
    Ok(vec![below("functional_equation", fe, 1e-8), below("theta_vs_coset_sum_b3", (t - c).norm() / t.norm(), 1e-3)])
}

fn lfun() -> Result<Vec<Check>> {
    let fd = CuspFormData::random_isobaric(2, 2.0, 5)?;
    let cfg = AfeConfig::default();
    let t = 10.0;
    let x = default_x(2, t);
    let a = afe_value(&fd, t, x, None, &cfg)?;
    let b = afe_value(&fd, t, 2.0 * x, None, &cfg)?;
    let exact: C64 = fd.rs_shifts().iter().map(|d| zeta(a.s + d)).collect::<rankin_core::Result<Vec<_>>>()?.iter().product();
    let e = epsilon_limit(&CuspFormData::random_isobaric(2, 1.0, 6)?, 10.0, 3.0, 1e-4)?;
    Ok(vec![
        below("afe_x_vs_2x", (a.value - b.value).norm() / a.value.norm(), 1e-6),
        below("afe_vs_zeta_product", (a.value - exact).norm() / exact.norm(), 1e-8),
        below("epsilon_limit_slope_offset", (e.slope - 1.0).abs(), 0.1),
        below("epsilon_limit_imaginary_part", e.limit.im.abs() / e.limit.re.abs(), 1e-8),
    ])
}

fn sieve() -> Result<Vec<Check>> {
    let eta = eta_lower_density(10.0, 2, 10_000)?;
    let overlap = overlap_density(&CuspFormData::random_sato_tate(2, 7)?, 10.0, 10_000)?;
    let mut cutoff: f64 = 0.0;
    for x in [0.5, 2.0] {
        cutoff = cutoff.max(mellin_cutoff(x)?.error);
    }
    let mut checks = vec![
        at_least("eta_density", eta.fraction, eta.threshold),
        at_least("overlap_density", overlap.fraction, overlap.threshold),
        below("mellin_cutoff_error", cutoff, 1e-4),
    ];
    checks.extend(psi_contract(&PsiSpec::new(1.5, vec![0.9, -0.2, -0.7])?)?);
    Ok(checks)
}

/// Normalisation, zero orders at the differences, decay on the strip and positivity of the
/// inverse transform on a log grid.
pub fn psi_contract(spec: &PsiSpec) -> Result<Vec<Check>> {
    let at_zero = (psi_tilde(spec, C64::new(0.0, 0.0))? - 1.0).norm();
    let mut min_order = f64::INFINITY;
    for d in spec.differences() {
        let w = C64::new(0.0, d);
        let (h1, h2) = (1e-2, 1e-3);
        let a = psi_tilde(spec, w + h1)?.norm();
        let b = psi_tilde(spec, w + h2)?.norm();
        min_order = min_order.min((a / b).ln() / (h1 / h2).ln());
    }
    let n = spec.n as f64;
    let mut decay: f64 = 0.0;
    for i in -4..=4 {
        let x = spec.strip * i as f64 / 4.0;
        for j in -250..=250 {
            let y = j as f64 / 5.0;
            decay = decay.max(psi_tilde(spec, C64::new(x, y))?.norm() * (n * y.abs()).exp());
        }
    }
    let mut min_psi = f64::INFINITY;
    for k in -12..=12 {
        min_psi = min_psi.min(psi_inverse_mellin(spec, 10f64.powf(k as f64 / 4.0))?);
    }
    let mut out = vec![below("psi_tilde_at_zero_offset", at_zero, 1e-10)];
    if min_order.is_finite() {
        out.push(at_least("psi_tilde_min_zero_order", min_order, spec.order as f64 - 0.05));
    }
    out.push(below("psi_tilde_decay_constant", decay, f64::INFINITY));
    out.push(at_least("psi_min_on_log_grid", min_psi, -1e-9));
    Ok(out)
}
