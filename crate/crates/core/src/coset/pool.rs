//! Random test matrices: `SL(n, Z)` from elementary words, and parabolic elements.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_depth, ParabolicKind};
use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// Product of `len` random elementary matrices `I ± E_{ij}`.
pub fn random_sl_matrix<R: Rng>(n: usize, len: usize, rng: &mut R) -> IntMatrix {
    let mut a = IntMatrix::identity(n, n);
    if n < 2 {
        return a;
    }
    for _ in 0..len {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let s: i64 = if rng.random_bool(0.5) { 1 } else { -1 };
        // row_i += s * row_j
        for c in 0..n {
            a[(i, c)] += s * a[(j, c)];
        }
    }
    a
}

fn max_abs(a: &IntMatrix) -> i64 {
    a.iter().map(|v| v.abs()).max().unwrap_or(0)
}

fn bounded_sl<R: Rng>(n: usize, bound: i64, rng: &mut R) -> IntMatrix {
    loop {
        let len = rng.random_range(1..=3 * n);
        let a = random_sl_matrix(n, len, rng);
        if max_abs(&a) <= bound {
            return a;
        }
    }
}

/// Random element of `P~_{n,m}(Z)` or of `P_{n-m,m}(Z) ∩ SL(n, Z)` with free entries in
/// `[-bound, bound]`.
pub fn random_parabolic_element<R: Rng>(n: usize, m: usize, kind: ParabolicKind, bound: i64, rng: &mut R) -> IntMatrix {
    let r = n - m;
    let mut x = IntMatrix::zeros(n, n);
    let top = bounded_sl(r, bound.max(1), rng);
    x.view_mut((0, 0), (r, r)).copy_from(&top);
    for i in 0..r {
        for j in r..n {
            x[(i, j)] = rng.random_range(-bound..=bound);
        }
    }
    match kind {
        ParabolicKind::Tilde => {
            for i in r..n {
                x[(i, i)] = 1;
                for j in i + 1..n {
                    x[(i, j)] = rng.random_range(-bound..=bound);
                }
            }
        }
        ParabolicKind::Maximal => {
            let low = bounded_sl(m, bound.max(1), rng);
            x.view_mut((r, r), (m, m)).copy_from(&low);
            if rng.random_bool(0.5) {
                for c in 0..n {
                    x[(0, c)] = -x[(0, c)];
                    x[(r, c)] = -x[(r, c)];
                }
            }
        }
    }
    x
}

/// Deterministic pool of distinct `SL(n, Z)` matrices with entries bounded by `entry_bound`.
/// Half of the pool are elementary words; the other half are `X A` with `A` drawn from the
/// pool and `X` in `P~_{n,m}(Z)`, so that the pool contains many pairs in a common coset.
pub fn sl_pool(n: usize, m: usize, size: usize, entry_bound: i64, seed: u64) -> Result<Vec<IntMatrix>> {
    check_depth(n, m)?;
    if entry_bound < 1 {
        return Err(Error::invalid(format!("entry bound must be at least 1, got {entry_bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut pool = Vec::with_capacity(size);
    let base_target = size.div_ceil(2);
    let max_attempts = 200_000;
    let mut attempts = 0;
    let mut push = |a: IntMatrix, pool: &mut Vec<IntMatrix>| {
        let flat: Vec<i64> = a.iter().copied().collect();
        if max_abs(&a) <= entry_bound && seen.insert(flat) {
            pool.push(a);
        }
    };
    while pool.len() < base_target && attempts < max_attempts {
        attempts += 1;
        let len = rng.random_range(1..=3 * n);
        push(random_sl_matrix(n, len, &mut rng), &mut pool);
    }
    while pool.len() < size && attempts < max_attempts && !pool.is_empty() {
        attempts += 1;
        let a = pool[rng.random_range(0..pool.len())].clone();
        let x = random_parabolic_element(n, m, ParabolicKind::Tilde, 2, &mut rng);
        push(&x * &a, &mut pool);
    }
    if pool.len() < size {
        return Err(Error::invalid(format!(
            "only {} distinct matrices with entries <= {entry_bound} after {attempts} draws",
            pool.len()
        )));
    }
    Ok(pool)
}
