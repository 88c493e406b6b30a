use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rankin_bench::{gl4_point, tempered_gl2};
use rankin_core::coset::{enumerate_coset_reps, same_coset};
use rankin_core::lfun::afe::default_x;
use rankin_core::lfun::{afe_value, AfeConfig};
use rankin_core::matrix::{det_exact, int_matrix};
use rankin_core::sieve::{eta_lower_density, psi_tilde};
use rankin_core::special::{k_bessel, ln_gamma, whittaker_stade};
use rankin_core::theta::eisenstein_completed;
use rankin_core::{CuspFormData, LatticeEnumSpec, PsiSpec, QuadratureSpec, C64};

fn special(c: &mut Criterion) {
    let q = QuadratureSpec::default().with_rel_tol(1e-10);
    c.bench_function("ln_gamma", |b| b.iter(|| ln_gamma(black_box(C64::new(0.3, 41.7)))));
    c.bench_function("k_bessel", |b| b.iter(|| k_bessel(black_box(C64::new(0.0, 3.0)), black_box(1.7), &q)));
    let p = tempered_gl2(2.0);
    c.bench_function("whittaker_gl2", |b| b.iter(|| whittaker_stade(&p, black_box(&[0.8]), &q)));
}

fn theta(c: &mut Criterion) {
    let z = gl4_point();
    let q = QuadratureSpec::default().with_rel_tol(1e-10);
    let mut g = c.benchmark_group("eisenstein_gl4");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    for s in [C64::new(0.6, 0.3), C64::new(0.5, 5.0)] {
        g.bench_with_input(BenchmarkId::from_parameter(s), &s, |b, s| b.iter(|| eisenstein_completed(&z, *s, &q)));
    }
    g.finish();
}

fn coset(c: &mut Criterion) {
    let mut g = c.benchmark_group("coset");
    g.sample_size(10);
    g.bench_function("enumerate_gl4_p22_b2", |b| b.iter(|| enumerate_coset_reps(&LatticeEnumSpec::maximal(4, 2, 2))));
    let a = int_matrix(&[&[2, 3, 1, 0], &[1, 2, 0, 1], &[0, 1, 1, 1], &[1, 1, 1, 2]]);
    let bm = int_matrix(&[&[1, 0, 2, 1], &[0, 1, 1, 0], &[1, 1, 4, 1], &[2, 1, 2, 3]]);
    g.bench_function("signature_compare_gl4", |b| b.iter(|| same_coset(black_box(&a), black_box(&bm), 2)));
    g.bench_function("det_exact_4x4", |b| b.iter(|| det_exact(black_box(&a))));
    g.finish();
}

fn lfun(c: &mut Criterion) {
    let fd = CuspFormData::random_isobaric(2, 1.0, 1).expect("valid form");
    let cfg = AfeConfig::default();
    let mut g = c.benchmark_group("afe");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    for t in [2.0, 10.0] {
        g.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, t| b.iter(|| afe_value(&fd, *t, default_x(2, *t), None, &cfg)));
    }
    g.finish();
}

fn sieve(c: &mut Criterion) {
    let spec = PsiSpec::new(1.5, vec![0.9, -0.2, -0.7]).expect("valid spec");
    c.bench_function("psi_tilde", |b| b.iter(|| psi_tilde(&spec, black_box(C64::new(0.2, 3.0)))));
    let mut g = c.benchmark_group("eta_density");
    g.sample_size(10);
    g.bench_function("N=1e5", |b| b.iter(|| eta_lower_density(10.0, 2, black_box(100_000))));
    g.finish();
}

criterion_group!(benches, special, theta, coset, lfun, sieve);
criterion_main!(benches);
