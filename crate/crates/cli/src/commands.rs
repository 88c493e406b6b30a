//! One function per subcommand, each producing a [`Report`].

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use rankin_core::coset::{enumerate_coset_reps, same_coset, same_coset_oracle, sl_pool, verify_height_contraction};
use rankin_core::lfun::afe::default_x;
use rankin_core::lfun::{afe_value, epsilon_limit, zero_free_region, AfeConfig};
use rankin_core::matrix::{height, iwasawa_decompose};
use rankin_core::sieve::{eta_lower_density, good_prime_density, mellin_cutoff, overlap_density, psi_inverse_mellin, psi_tilde, DensityReport};
use rankin_core::special::{whittaker_direct, whittaker_stade};
use rankin_core::theta::{eisenstein_completed, eisenstein_coset_sum, transpose_inverse_coords};
use rankin_core::{CuspFormData, IwasawaCoords, LatticeEnumSpec, ParabolicKind, PsiSpec, QuadratureSpec, SpectralParams, C64};

use crate::cli::*;
use crate::parse::{self, format_complex, format_floats};
use crate::report::{num, text, Report};

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Iwasawa(a) => iwasawa(a),
        Command::Coset(c) => coset(c),
        Command::Eisenstein(a) => eisenstein(a),
        Command::Whittaker(a) => whittaker(a),
        Command::Lfun(c) => lfun(c),
        Command::MaassSelberg(a) => maass_selberg(a),
        Command::Sieve(c) => sieve(c),
        Command::Psi(a) => psi(a),
        Command::Zfr(a) => zfr(a),
        Command::Verify(a) => crate::verify::run(&a.suite),
    }
}

fn complex_cell(z: C64) -> Value {
    text(format_complex(z))
}

fn iwasawa(a: &IwasawaArgs) -> Result<Report> {
    let g = parse::real_matrix(&a.matrix)?;
    if g.nrows() != g.ncols() {
        bail!("the matrix must be square, got {}x{}", g.nrows(), g.ncols());
    }
    let z = iwasawa_decompose(&g)?;
    let h = if z.k % 2 == 0 { num(height(&z)?) } else { Value::Null };
    let mut cols = vec!["k", "x", "y", "height"];
    let mut row = vec![Value::from(z.k), text(format_floats(&z.x)), text(format_floats(&z.y)), h];
    let mut report;
    if a.check {
        // z z^t and g g^t agree up to the positive scalar fixed by the bottom-right entries
        let zm = z.to_matrix();
        let zz = &zm * zm.transpose();
        let gg = &g * g.transpose();
        let k = z.k - 1;
        let scaled = &zz * (gg[(k, k)] / zz[(k, k)]);
        let residual = (&scaled - &gg).amax() / gg.amax();
        cols.push("residual");
        row.push(num(residual));
        report = Report::new(&cols);
        report.check(residual < 1e-10, || format!("reconstruction residual {residual:e} exceeds 1e-10"));
    } else {
        report = Report::new(&cols);
    }
    report.push(row);
    Ok(report)
}

/// Explicit coordinates, or `points` random ones with `x` in `[-1/2, 1/2]` and `y` in `[1, 2]`.
fn points(k: usize, p: &PointArgs) -> Result<Vec<IwasawaCoords>> {
    if p.x.is_some() || p.y.is_some() {
        let x = parse::float_list(p.x.as_deref().unwrap_or(""))?;
        let y = parse::float_list(p.y.as_deref().context("--y is required when --x is given")?)?;
        let x = if x.is_empty() { vec![0.0; k * (k - 1) / 2] } else { x };
        return Ok(vec![IwasawaCoords::new(k, x, y)?]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..p.points)
        .map(|_| {
            let x = (0..k * (k - 1) / 2).map(|_| rng.random_range(-0.5..0.5)).collect();
            let y = (0..k - 1).map(|_| rng.random_range(1.0..2.0)).collect();
            Ok(IwasawaCoords::new(k, x, y)?)
        })
        .collect()
}

fn coset(c: &CosetCommand) -> Result<Report> {
    match c {
        CosetCommand::Reps { n, m, bound, maximal } => {
            let spec = if *maximal { LatticeEnumSpec::maximal(*n, *m, *bound) } else { LatticeEnumSpec::new(*n, *m, *bound) };
            let reps = enumerate_coset_reps(&spec)?;
            let mut r = Report::new(&["index", "matrix"]);
            for (i, g) in reps.iter().enumerate() {
                let rows: Vec<Value> =
                    (0..g.nrows()).map(|a| Value::from((0..g.ncols()).map(|b| g[(a, b)]).collect::<Vec<_>>())).collect();
                r.push(vec![Value::from(i), Value::Array(rows)]);
            }
            Ok(r)
        }
        CosetCommand::Compare { a, b, m } => {
            let (a, b) = (parse::int_matrix(a)?, parse::int_matrix(b)?);
            let sig = same_coset(&a, &b, *m)?;
            let exact = same_coset_oracle(&a, &b, ParabolicKind::Tilde, *m)?;
            let mut r = Report::new(&["signature_equal", "oracle_equal", "agree"]);
            r.push(vec![Value::Bool(sig), Value::Bool(exact), Value::Bool(sig == exact)]);
            r.check(sig == exact, || format!("signature test says {sig}, exact membership says {exact}"));
            Ok(r)
        }
        CosetCommand::Oracle { n, m, pool, bound, seed } => {
            let mats = sl_pool(*n, *m, *pool, *bound, *seed)?;
            let mut disagreements = 0usize;
            let mut same = 0usize;
            for a in &mats {
                for b in &mats {
                    let sig = same_coset(a, b, *m)?;
                    same += sig as usize;
                    if sig != same_coset_oracle(a, b, ParabolicKind::Tilde, *m)? {
                        disagreements += 1;
                    }
                }
            }
            let pairs = mats.len() * mats.len();
            let mut r = Report::new(&["n", "m", "pool", "pairs", "same_coset_pairs", "disagreements"]);
            r.push(vec![(*n).into(), (*m).into(), mats.len().into(), pairs.into(), same.into(), disagreements.into()]);
            r.check(disagreements == 0, || format!("{disagreements} of {pairs} pairs disagree"));
            Ok(r)
        }
        CosetCommand::Height { n, bound, point } => {
            let k = 2 * n;
            let reps = enumerate_coset_reps(&LatticeEnumSpec::maximal(k, *n, *bound))?;
            let mut r = Report::new(&["point", "x", "y", "representatives", "max_ratio", "argmax", "violations"]);
            for (i, z) in points(k, point)?.iter().enumerate() {
                let h = verify_height_contraction(z, &reps)?;
                r.push(vec![
                    i.into(),
                    text(format_floats(&z.x)),
                    text(format_floats(&z.y)),
                    h.count.into(),
                    num(h.max_ratio),
                    text(parse::format_int_matrix(&reps[h.argmax])),
                    h.violations.len().into(),
                ]);
                r.check(h.violations.is_empty(), || format!("point {i}: {} representatives raise the height", h.violations.len()));
            }
            Ok(r)
        }
    }
}

fn eisenstein(a: &EisensteinArgs) -> Result<Report> {
    let s = parse::complex(&a.s)?;
    let q = QuadratureSpec::default().with_rel_tol(a.rel_tol);
    q.validate()?;
    let mut cols = vec!["point", "x", "y", "s", "value"];
    if a.check_fe {
        cols.extend(["dual_value", "fe_residual"]);
    }
    if a.coset_bound.is_some() {
        cols.extend(["coset_sum", "coset_residual"]);
    }
    let mut r = Report::new(&cols);
    for (i, z) in points(2 * a.n, &a.point)?.iter().enumerate() {
        let v = eisenstein_completed(z, s, &q)?;
        let mut row = vec![i.into(), text(format_floats(&z.x)), text(format_floats(&z.y)), complex_cell(s), complex_cell(v)];
        if a.check_fe {
            let d = eisenstein_completed(&transpose_inverse_coords(z)?, 1.0 - s, &q)?;
            let res = (v - d).norm() / v.norm();
            row.extend([complex_cell(d), num(res)]);
            r.check(res < a.tol, || format!("point {i}: functional equation residual {res:e} exceeds {:e}", a.tol));
        }
        if let Some(b) = a.coset_bound {
            let c = eisenstein_coset_sum(z, s, b)?;
            let res = (v - c).norm() / v.norm();
            row.extend([complex_cell(c), num(res)]);
        }
        r.push(row);
    }
    Ok(r)
}

fn whittaker(a: &WhittakerArgs) -> Result<Report> {
    let nu = parse::complex_list(&a.nu)?;
    let y = parse::float_list(&a.y)?;
    let p = SpectralParams::new(a.n, nu)?;
    let q = QuadratureSpec::default().with_rel_tol(a.rel_tol);
    q.validate()?;
    let w = whittaker_stade(&p, &y, &q)?;
    let value = if a.completed { w.completed_value()? } else { w.uncompleted_value()? };
    let nu_text = p.nu.iter().map(|z| format_complex(*z)).collect::<Vec<_>>().join(",");
    let mut cols = vec!["n", "nu", "y", "completed", "value"];
    let mut row = vec![a.n.into(), text(nu_text), text(format_floats(&y)), Value::Bool(a.completed), complex_cell(value)];
    if !a.check {
        let mut r = Report::new(&cols);
        r.push(row);
        return Ok(r);
    }
    let dq = QuadratureSpec::default().with_rel_tol(if a.n == 2 { 1e-11 } else { 1e-7 });
    let direct = whittaker_direct(&p, &y, &dq)?;
    let base = w.uncompleted_value()?;
    let rel = (base - direct).norm() / direct.norm();
    let tol = a.tol.unwrap_or(if a.n == 2 { 1e-6 } else { 1e-4 });
    cols.extend(["direct", "rel_error"]);
    let direct_out = if a.completed { direct * (w.completed_value()? / base) } else { direct };
    row.extend([complex_cell(direct_out), num(rel)]);
    let mut r = Report::new(&cols);
    r.push(row);
    r.check(rel < tol, || format!("relative difference {rel:e} from the defining integral exceeds {tol:e}"));
    Ok(r)
}

pub fn load_form(f: &FormArgs) -> Result<CuspFormData> {
    if let Some(path) = &f.form {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(CuspFormData::from_json(&text)?);
    }
    if let Some(shifts) = &f.shifts {
        return Ok(CuspFormData::isobaric(&parse::float_list(shifts)?, f.petersson)?);
    }
    if f.sato_tate {
        return Ok(CuspFormData::random_sato_tate(f.degree, f.form_seed)?);
    }
    Ok(CuspFormData::random_isobaric(f.degree, f.spread, f.form_seed)?)
}

fn lfun(c: &LfunCommand) -> Result<Report> {
    match c {
        LfunCommand::Value { form, t, x, check_x, m_max, tol } => {
            let fd = load_form(form)?;
            let x = x.unwrap_or_else(|| default_x(fd.n, *t));
            let cfg = AfeConfig::default();
            let v = afe_value(&fd, *t, x, *m_max, &cfg)?;
            let mut cols = vec!["s", "x", "value", "terms_first", "terms_dual", "gauss"];
            let mut row =
                vec![complex_cell(v.s), num(x), complex_cell(v.value), v.terms_first.into(), v.terms_dual.into(), num(v.gauss)];
            let mut checks = None;
            if *check_x {
                let w = afe_value(&fd, *t, 2.0 * x, *m_max, &cfg)?;
                let rel = (v.value - w.value).norm() / v.value.norm();
                cols.extend(["value_2x", "rel_diff"]);
                row.extend([complex_cell(w.value), num(rel)]);
                checks = Some(rel);
            }
            let mut r = Report::new(&cols);
            r.push(row);
            if let Some(rel) = checks {
                r.check(rel < *tol, || format!("values at X and 2X differ by {rel:e} (tolerance {tol:e})"));
            }
            Ok(r)
        }
        LfunCommand::Export { form, primes } => {
            let doc = load_form(form)?.to_document(*primes)?;
            Ok(Report::document(serde_json::to_value(&doc)?))
        }
    }
}

fn maass_selberg(a: &MaassSelbergArgs) -> Result<Report> {
    let fd = load_form(&a.form)?;
    let e = epsilon_limit(&fd, a.a, a.t, a.eps)?;
    let mut r = Report::new(&["t", "a", "eps", "limit", "at_eps", "at_half_eps", "slope"]);
    r.push(vec![num(e.t), num(e.a), num(e.eps), complex_cell(e.limit), complex_cell(e.at_eps), complex_cell(e.at_half_eps), num(e.slope)]);
    r.check((0.9..=1.1).contains(&e.slope), || format!("convergence slope {} is outside [0.9, 1.1]", e.slope));
    r.check(e.limit.im.abs() < 1e-8 * e.limit.re.abs(), || format!("diagonal value {} is not real", e.limit));
    r.check(e.limit.re >= -1e-8, || format!("diagonal value {} is negative", e.limit));
    Ok(r)
}

fn density(rep: DensityReport) -> Report {
    let mut r = Report::new(&["N", "count", "fraction", "threshold", "pass"]);
    r.push(vec![rep.left.into(), rep.count.into(), num(rep.fraction), num(rep.threshold), Value::Bool(rep.pass)]);
    r.check(rep.pass, || format!("fraction {} is below {}", rep.fraction, rep.threshold));
    r
}

fn sieve(c: &SieveCommand) -> Result<Report> {
    match c {
        SieveCommand::EtaDensity { t, n, big_n } => Ok(density(eta_lower_density(*t, *n, *big_n)?)),
        SieveCommand::GoodPrimes { form, big_n } => Ok(density(good_prime_density(&load_form(form)?, *big_n)?)),
        SieveCommand::Overlap { form, t, big_n } => Ok(density(overlap_density(&load_form(form)?, *t, *big_n)?)),
        SieveCommand::Cutoff { x, tol } => {
            let mut r = Report::new(&["x", "value", "closed_form", "error", "pass"]);
            for x in parse::float_list(x)? {
                let m = mellin_cutoff(x)?;
                let ok = m.error < *tol;
                r.push(vec![num(x), num(m.value), num(m.closed_form), num(m.error), Value::Bool(ok)]);
                r.check(ok, || format!("x = {x}: error {:e} exceeds {tol:e}", m.error));
            }
            Ok(r)
        }
    }
}

fn psi(a: &PsiArgs) -> Result<Report> {
    let mut spec = PsiSpec::new(a.r, parse::float_list(&a.alpha)?)?.with_order(a.order);
    if let Some(strip) = a.strip {
        spec.strip = strip;
    }
    spec.validate()?;
    let mut r = Report::new(&["quantity", "argument", "value", "pass"]);
    if let Some(ws) = &a.w {
        for w in parse::complex_list(ws)? {
            r.push(vec![text("psi_tilde"), complex_cell(w), complex_cell(psi_tilde(&spec, w)?), Value::Null]);
        }
    }
    if let Some(ys) = &a.y {
        for y in parse::float_list(ys)? {
            r.push(vec![text("psi"), num(y), num(psi_inverse_mellin(&spec, y)?), Value::Null]);
        }
    }
    if a.check {
        for c in crate::verify::psi_contract(&spec)? {
            r.push(vec![text(c.name), Value::Null, num(c.value), Value::Bool(c.pass)]);
            r.check(c.pass, || format!("{}: {} against {}", c.name, c.value, c.bound));
        }
    }
    if r.rows.is_empty() {
        bail!("nothing to do: give --w, --y or --check");
    }
    Ok(r)
}

fn zfr(a: &ZfrArgs) -> Result<Report> {
    let z = zero_free_region(a.t, a.lower, a.deriv)?;
    let mut r = Report::new(&["t", "c", "width", "log_power"]);
    r.push(vec![num(a.t), num(z.c), num(z.width), z.exponent.into()]);
    Ok(r)
}
