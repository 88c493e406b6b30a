//! Cosets of parabolic subgroups of `SL(n, Z)` through minors of bottom row blocks.
//!
//! Two kinds of subgroup are handled:
//!
//! * [`ParabolicKind::Tilde`]: the group `P~_{n,m}(Z)` of integer matrices
//!   `[[A, B], [0, U]]` with `det A = 1` and `U` upper unitriangular of size `m`. Two matrices
//!   lie in the same coset exactly when their bottom `k` rows have the same `k x k` minors for
//!   every `k <= m`, so the key is the full list of minor vectors, signs included.
//! * [`ParabolicKind::Maximal`]: `P_{n-m,m}(Z) ∩ SL(n, Z)`. The bottom `m` rows are determined
//!   up to `GL(m, Z)`, so the key is their Plücker vector up to sign, normalised so that its
//!   first nonzero entry is positive. With `n = 2m` this is the `P_{m,m}` parabolic used by the
//!   height function; with `m = 1` it is `P_{n-1,1}`.

mod enumerate;
mod height;
mod pool;

pub use enumerate::{complete_bottom_rows, enumerate_coset_reps, enumerate_cosets, LatticeEnumSpec, DEFAULT_CAP};
pub use height::{verify_height_contraction, HeightReport};
pub use pool::{random_parabolic_element, random_sl_matrix, sl_pool};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::{det_exact, det_ring, subsets, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParabolicKind {
    Tilde,
    Maximal,
}

/// Minor signature of a coset. `minors[k-1]` lists the `k x k` minors of the bottom `k` rows
/// with columns in lexicographic order. For [`ParabolicKind::Maximal`] only the level `m`
/// vector is stored, sign-normalised.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetKey {
    pub kind: ParabolicKind,
    pub m: usize,
    pub minors: Vec<Vec<BigInt>>,
}

impl CosetKey {
    /// The highest level vector (the Plücker coordinates of the bottom `m` rows).
    pub fn top_level(&self) -> &[BigInt] {
        self.minors.last().map_or(&[], |v| v.as_slice())
    }
}

pub(crate) fn check_depth(n: usize, m: usize) -> Result<()> {
    if n < 2 || m == 0 || m >= n {
        return Err(Error::Dimension(format!("need n >= 2 and 1 <= m < n, got n = {n}, m = {m}")));
    }
    Ok(())
}

pub(crate) fn check_unimodular(a: &IntMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension(format!("expected a square matrix, got {}x{}", a.nrows(), a.ncols())));
    }
    let d = det_exact(a);
    if !d.is_one() {
        return Err(Error::NotUnimodular(d.to_string()));
    }
    Ok(())
}

/// `k x k` minors of the last `k` rows of `rows` (each row of length `n`), lexicographic.
pub(crate) fn bottom_minors<T: Clone + num_traits::Num>(rows: &[Vec<T>], k: usize) -> Vec<T> {
    let n = rows[0].len();
    let block = &rows[rows.len() - k..];
    subsets(n, k)
        .into_iter()
        .map(|cols| match k {
            1 => block[0][cols[0] - 1].clone(),
            2 => {
                let (a, b) = (&block[0], &block[1]);
                let (i, j) = (cols[0] - 1, cols[1] - 1);
                a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()
            }
            _ => det_ring(block.iter().map(|r| cols.iter().map(|&c| r[c - 1].clone()).collect()).collect()),
        })
        .collect()
}

pub(crate) fn normalize_sign<T: Signed + Clone>(v: &mut [T]) {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
}

/// Key of the coset `P A` for the given kind and depth, without the determinant check.
pub(crate) fn key_of_rows<T: Clone + num_traits::Num + Signed + Into<BigInt>>(
    rows: &[Vec<T>],
    kind: ParabolicKind,
    m: usize,
) -> CosetKey {
    let minors = match kind {
        ParabolicKind::Tilde => {
            (1..=m).map(|k| bottom_minors(rows, k).into_iter().map(Into::into).collect()).collect()
        }
        ParabolicKind::Maximal => {
            let mut top = bottom_minors(rows, m);
            normalize_sign(&mut top);
            vec![top.into_iter().map(Into::into).collect()]
        }
    };
    CosetKey { kind, m, minors }
}

pub(crate) fn rows_of(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| BigInt::from(a[(i, j)])).collect()).collect()
}

/// Key of `A` in `P~_{n,m}(Z) \ SL(n, Z)`.
pub fn coset_key(a: &IntMatrix, m: usize) -> Result<CosetKey> {
    coset_key_of(a, ParabolicKind::Tilde, m)
}

pub fn coset_key_of(a: &IntMatrix, kind: ParabolicKind, m: usize) -> Result<CosetKey> {
    check_unimodular(a)?;
    check_depth(a.nrows(), m)?;
    Ok(key_of_rows(&rows_of(a), kind, m))
}

/// Whether `A` and `A'` lie in the same `P~_{n,m}(Z)` coset, by comparing minor signatures.
pub fn same_coset(a: &IntMatrix, b: &IntMatrix, m: usize) -> Result<bool> {
    if a.nrows() != b.nrows() {
        return Err(Error::Dimension(format!("sizes differ: {} and {}", a.nrows(), b.nrows())));
    }
    Ok(coset_key(a, m)? == coset_key(b, m)?)
}

/// Adjugate over the integers; for `A` in `SL(n, Z)` this is the inverse.
pub fn adjugate(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.nrows();
    let rows = rows_of(a);
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let sub: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| rows[r][c].clone()).collect())
                .collect();
            let c = det_ring(sub);
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

fn mul_rows(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let p = b[0].len();
    (0..n).map(|i| (0..p).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

/// Exact membership of an integer matrix in `P~_{n,m}(Z)`: zero lower-left block, upper
/// unitriangular lower-right block, and determinant one.
pub fn in_tilde_parabolic(x: &[Vec<BigInt>], m: usize) -> bool {
    let n = x.len();
    if m == 0 || m >= n {
        return false;
    }
    let r = n - m;
    for i in r..n {
        for j in 0..n {
            let v = &x[i][j];
            let ok = if j < r || (j < i) {
                v.is_zero()
            } else if j == i {
                v.is_one()
            } else {
                true
            };
            if !ok {
                return false;
            }
        }
    }
    let top: Vec<Vec<BigInt>> = x[..r].iter().map(|row| row[..r].to_vec()).collect();
    det_ring(top).is_one()
}

/// Exact membership of an integer matrix in `P_{n-m,m}(Z) ∩ SL(n, Z)`.
pub fn in_maximal_parabolic(x: &[Vec<BigInt>], m: usize) -> bool {
    let n = x.len();
    if m == 0 || m >= n {
        return false;
    }
    let r = n - m;
    x[r..].iter().all(|row| row[..r].iter().all(Zero::is_zero)) && det_ring(x.to_vec()).is_one()
}

/// Brute-force coset comparison: forms `A adj(A')` and tests its block pattern.
pub fn same_coset_oracle(a: &IntMatrix, b: &IntMatrix, kind: ParabolicKind, m: usize) -> Result<bool> {
    check_unimodular(a)?;
    check_unimodular(b)?;
    check_depth(a.nrows(), m)?;
    if a.nrows() != b.nrows() {
        return Err(Error::Dimension(format!("sizes differ: {} and {}", a.nrows(), b.nrows())));
    }
    let x = mul_rows(&rows_of(a), &adjugate(b));
    Ok(match kind {
        ParabolicKind::Tilde => in_tilde_parabolic(&x, m),
        ParabolicKind::Maximal => in_maximal_parabolic(&x, m),
    })
}
