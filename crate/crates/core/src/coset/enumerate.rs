//! Enumeration of coset representatives with bounded bottom rows.
//!
//! A coset is determined by the bottom `m` rows of any of its members, so the search runs
//! over `m x n` integer blocks with entries in `[-B, B]`. Blocks whose maximal minors are
//! coprime extend to `SL(n, Z)`; they are grouped by key and the smallest block of each group
//! is completed to a full matrix.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bottom_minors, check_depth, key_of_rows, normalize_sign, CosetKey, ParabolicKind};
use crate::matrix::{det_exact, IntMatrix};
use crate::{Error, Result};

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeEnumSpec {
    pub n: usize,
    pub m: usize,
    pub entry_bound: i64,
    /// Keep only cosets whose bottom `m` rows have wedge norm squared at most this value.
    pub height_bound: Option<f64>,
    pub kind: ParabolicKind,
    /// Largest number of candidate blocks searched before giving up.
    pub cap: u128,
}

impl LatticeEnumSpec {
    pub fn new(n: usize, m: usize, entry_bound: i64) -> Self {
        Self { n, m, entry_bound, height_bound: None, kind: ParabolicKind::Tilde, cap: DEFAULT_CAP }
    }

    /// `P_{n-m,m}(Z) ∩ SL(n, Z)` cosets.
    pub fn maximal(n: usize, m: usize, entry_bound: i64) -> Self {
        Self { kind: ParabolicKind::Maximal, ..Self::new(n, m, entry_bound) }
    }

    pub fn with_height_bound(mut self, h: f64) -> Self {
        self.height_bound = Some(h);
        self
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_depth(self.n, self.m)?;
        if self.entry_bound < 1 {
            return Err(Error::invalid(format!("entry bound must be at least 1, got {}", self.entry_bound)));
        }
        if self.n > 4 || self.entry_bound > 4 {
            return Err(Error::precondition(format!(
                "enumeration is limited to n <= 4 and entry bound <= 4, got n = {}, bound = {}",
                self.n, self.entry_bound
            )));
        }
        if let Some(h) = self.height_bound {
            if !(h > 0.0) {
                return Err(Error::invalid(format!("height bound must be positive, got {h}")));
            }
        }
        Ok(())
    }

    pub fn candidates(&self) -> u128 {
        ((2 * self.entry_bound + 1) as u128).pow((self.n * self.m) as u32)
    }
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

/// Flattened integer key of a block, or `None` if the block does not extend to `SL(n, Z)`.
fn block_key(rows: &[Vec<i64>], kind: ParabolicKind, m: usize) -> Option<Vec<i64>> {
    let mut top = bottom_minors(rows, m);
    if gcd_all(&top) != 1 {
        return None;
    }
    Some(match kind {
        ParabolicKind::Tilde => {
            let mut flat: Vec<i64> = (1..m).flat_map(|k| bottom_minors(rows, k)).collect();
            flat.append(&mut top);
            flat
        }
        ParabolicKind::Maximal => {
            normalize_sign(&mut top);
            top
        }
    })
}

/// Preference among blocks with the same key: small entries first, then the
/// lexicographically largest, which makes the identity represent its own coset.
fn better(a: &[i64], b: &[i64]) -> bool {
    let score = |v: &[i64]| (v.iter().map(|x| x.abs()).max().unwrap_or(0), v.iter().map(|x| x * x).sum::<i64>());
    let (sa, sb) = (score(a), score(b));
    sa < sb || (sa == sb && a > b)
}

/// Extends `m` bottom rows with coprime maximal minors to a matrix in `SL(n, Z)` whose bottom
/// rows are exactly the given ones. The top rows are size-reduced.
pub fn complete_bottom_rows(bottom: &[Vec<i64>], n: usize) -> Result<IntMatrix> {
    let m = bottom.len();
    check_depth(n, m)?;
    if bottom.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("bottom rows must have length {n}")));
    }
    let mut r: Vec<Vec<i128>> = bottom.iter().map(|row| row.iter().map(|&v| v as i128).collect()).collect();
    let mut w: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    // column operations clear each bottom row to the left of its target column;
    // `w` accumulates their inverse as row operations so that bottom = [0 | T] w
    for ri in (0..m).rev() {
        let t = n - m + ri;
        for j in 0..t {
            let a = r[ri][j];
            if a == 0 {
                continue;
            }
            let b = r[ri][t];
            let e = a.extended_gcd(&b);
            let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
            if g < 0 {
                (g, x, y) = (-g, -x, -y);
            }
            let (ag, bg) = (a / g, b / g);
            for row in r.iter_mut() {
                let (cj, ct) = (row[j], row[t]);
                row[j] = bg * cj - ag * ct;
                row[t] = x * cj + y * ct;
            }
            for c in 0..n {
                let (wj, wt) = (w[j][c], w[t][c]);
                w[j][c] = y * wj - x * wt;
                w[t][c] = ag * wj + bg * wt;
            }
        }
    }
    let r0 = n - m;
    let det_t: i128 = (0..m).map(|i| r[i][r0 + i]).product();
    if det_t.abs() != 1 {
        return Err(Error::invalid(format!(
            "bottom rows do not extend to SL({n}, Z): gcd of maximal minors is {}",
            det_t.abs()
        )));
    }
    let mut top: Vec<Vec<i128>> = w[..r0].to_vec();
    let bottom128: Vec<Vec<i128>> = bottom.iter().map(|row| row.iter().map(|&v| v as i128).collect()).collect();
    size_reduce(&mut top, &bottom128);
    let mut g = IntMatrix::zeros(n, n);
    for (i, row) in top.iter().chain(bottom128.iter()).enumerate() {
        for (j, v) in row.iter().enumerate() {
            g[(i, j)] = v.to_i64().ok_or_else(|| Error::invalid("completion overflowed i64"))?;
        }
    }
    if det_exact(&g) == BigInt::from(-1) {
        for j in 0..n {
            g[(0, j)] = -g[(0, j)];
        }
    }
    debug_assert_eq!(det_exact(&g), BigInt::from(1));
    Ok(g)
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Shortens the top rows by subtracting integer multiples of the other rows. Each step
/// multiplies by an element of the parabolic on the left, so the coset is unchanged.
fn size_reduce(top: &mut [Vec<i128>], bottom: &[Vec<i128>]) {
    let r0 = top.len();
    for _ in 0..64 {
        let mut changed = false;
        for i in 0..r0 {
            for k in 0..r0 + bottom.len() {
                if k == i {
                    continue;
                }
                let other = if k < r0 { top[k].clone() } else { bottom[k - r0].clone() };
                let nn = dot(&other, &other);
                if nn == 0 {
                    continue;
                }
                let c = (2 * dot(&top[i], &other) + nn).div_euclid(2 * nn);
                if c == 0 {
                    continue;
                }
                let cand: Vec<i128> = top[i].iter().zip(&other).map(|(x, y)| x - c * y).collect();
                if dot(&cand, &cand) < dot(&top[i], &top[i]) {
                    top[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// All cosets met by blocks with entries in `[-B, B]`, with a completed representative each,
/// sorted by key.
pub fn enumerate_cosets(spec: &LatticeEnumSpec) -> Result<Vec<(CosetKey, IntMatrix)>> {
    spec.validate()?;
    let candidates = spec.candidates();
    if candidates > spec.cap {
        return Err(Error::ResourceCap { candidates, cap: spec.cap });
    }
    let (n, m, b, kind) = (spec.n, spec.m, spec.entry_bound, spec.kind);
    let len = n * m;
    let parts: Vec<HashMap<Vec<i64>, Vec<i64>>> = (-b..=b)
        .into_par_iter()
        .map(|first| {
            let mut best: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
            let mut cell = vec![-b; len];
            cell[0] = first;
            loop {
                let rows: Vec<Vec<i64>> = cell.chunks(n).map(<[i64]>::to_vec).collect();
                if let Some(key) = block_key(&rows, kind, m) {
                    match best.get_mut(&key) {
                        Some(cur) if better(&cell, cur) => cur.clone_from(&cell),
                        Some(_) => {}
                        None => {
                            best.insert(key, cell.clone());
                        }
                    }
                }
                let mut i = len - 1;
                loop {
                    if cell[i] < b {
                        cell[i] += 1;
                        break;
                    }
                    cell[i] = -b;
                    if i == 1 {
                        return best;
                    }
                    i -= 1;
                }
            }
        })
        .collect();
    let mut merged: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    for part in parts {
        for (key, cell) in part {
            match merged.get_mut(&key) {
                Some(cur) if better(&cell, cur) => *cur = cell,
                Some(_) => {}
                None => {
                    merged.insert(key, cell);
                }
            }
        }
    }
    let mut out: Vec<(CosetKey, IntMatrix)> = merged
        .into_par_iter()
        .filter(|(key, _)| {
            spec.height_bound.is_none_or(|h| {
                let top = &key[key.len() - num_top(n, m)..];
                top.iter().map(|&v| (v * v) as f64).sum::<f64>() <= h
            })
        })
        .map(|(_, cell)| {
            let rows: Vec<Vec<i64>> = cell.chunks(n).map(<[i64]>::to_vec).collect();
            let g = complete_bottom_rows(&rows, n)?;
            Ok((key_of_rows(&rows, kind, m), g))
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn num_top(n: usize, m: usize) -> usize {
    // binomial(n, m)
    (0..m).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// One representative per coset, sorted by key.
pub fn enumerate_coset_reps(spec: &LatticeEnumSpec) -> Result<Vec<IntMatrix>> {
    Ok(enumerate_cosets(spec)?.into_iter().map(|(_, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::super::{coset_key_of, same_coset_oracle};
    use super::*;
    use std::collections::BTreeSet;

    /// Every matrix in `SL(n, Z)` with entries in `[-b, b]`.
    fn all_sl(n: usize, b: i64) -> Vec<IntMatrix> {
        let len = n * n;
        let base = (2 * b + 1) as usize;
        let total = base.pow(len as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut a = IntMatrix::zeros(n, n);
            for idx in 0..len {
                a[(idx / n, idx % n)] = (code % base) as i64 - b;
                code /= base;
            }
            if det_exact(&a) == BigInt::from(1) {
                out.push(a);
            }
        }
        out
    }

    #[test]
    fn gl2_matches_coprime_pairs() {
        let reps = enumerate_cosets(&LatticeEnumSpec::new(2, 1, 2)).unwrap();
        let mut pairs = BTreeSet::new();
        for c in -2i64..=2 {
            for d in -2i64..=2 {
                if c.gcd(&d) == 1 {
                    pairs.insert((c, d));
                }
            }
        }
        let got: BTreeSet<(i64, i64)> = reps.iter().map(|(_, g)| (g[(1, 0)], g[(1, 1)])).collect();
        assert_eq!(got, pairs);
        assert_eq!(reps.len(), pairs.len());
    }

    #[test]
    fn counts_match_exhaustive_dedup() {
        for (n, m, b, kind) in [
            (2, 1, 2, ParabolicKind::Tilde),
            (3, 1, 1, ParabolicKind::Tilde),
            (3, 2, 1, ParabolicKind::Tilde),
            (3, 1, 1, ParabolicKind::Maximal),
            (3, 2, 1, ParabolicKind::Maximal),
        ] {
            let keys: BTreeSet<CosetKey> =
                all_sl(n, b).iter().map(|a| coset_key_of(a, kind, m).unwrap()).collect();
            let spec = LatticeEnumSpec { kind, ..LatticeEnumSpec::new(n, m, b) };
            let reps = enumerate_cosets(&spec).unwrap();
            let got: BTreeSet<CosetKey> = reps.iter().map(|(k, _)| k.clone()).collect();
            assert_eq!(got, keys, "n={n} m={m} b={b} {kind:?}");
            assert_eq!(reps.len(), keys.len());
        }
    }

    #[test]
    fn representatives_carry_their_keys() {
        for spec in [LatticeEnumSpec::new(4, 2, 1), LatticeEnumSpec::maximal(4, 2, 2), LatticeEnumSpec::new(3, 1, 3)] {
            let reps = enumerate_cosets(&spec).unwrap();
            for (key, g) in &reps {
                assert_eq!(coset_key_of(g, spec.kind, spec.m).unwrap(), *key);
            }
            // distinct keys are distinct cosets by the oracle as well
            for pair in reps.windows(2).take(200) {
                assert!(!same_coset_oracle(&pair[0].1, &pair[1].1, spec.kind, spec.m).unwrap());
            }
        }
    }

    #[test]
    fn identity_represents_itself() {
        for spec in [
            LatticeEnumSpec::new(3, 1, 2),
            LatticeEnumSpec::new(3, 2, 1),
            LatticeEnumSpec::maximal(4, 2, 1),
            LatticeEnumSpec::maximal(4, 1, 2),
        ] {
            let reps = enumerate_cosets(&spec).unwrap();
            let id = IntMatrix::identity(spec.n, spec.n);
            let key = coset_key_of(&id, spec.kind, spec.m).unwrap();
            let found = reps.iter().find(|(k, _)| *k == key).unwrap();
            assert_eq!(found.1, id, "{spec:?}");
        }
    }

    #[test]
    fn deterministic_and_sorted() {
        let spec = LatticeEnumSpec::maximal(4, 2, 2);
        let a = enumerate_cosets(&spec).unwrap();
        let b = enumerate_cosets(&spec).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn height_bound_filters_by_wedge_norm() {
        let all = enumerate_cosets(&LatticeEnumSpec::new(3, 1, 2)).unwrap();
        let cut = enumerate_cosets(&LatticeEnumSpec::new(3, 1, 2).with_height_bound(2.0)).unwrap();
        let expect = all
            .iter()
            .filter(|(k, _)| k.top_level().iter().map(|v| v * v).sum::<BigInt>() <= BigInt::from(2))
            .count();
        assert_eq!(cut.len(), expect);
        // (0,0,1), (0,1,0), (1,0,0), their negatives, and the 12 vectors with two entries ±1
        assert_eq!(expect, 18);
    }

    #[test]
    fn resource_cap_and_preconditions() {
        let big = LatticeEnumSpec::new(4, 3, 4);
        assert!(matches!(enumerate_cosets(&big), Err(Error::ResourceCap { .. })));
        assert!(enumerate_cosets(&LatticeEnumSpec::new(5, 1, 1)).is_err());
        assert!(enumerate_cosets(&LatticeEnumSpec::new(3, 1, 0)).is_err());
        assert!(enumerate_cosets(&LatticeEnumSpec::new(3, 1, 1).with_height_bound(-1.0)).is_err());
    }

    #[test]
    fn completion_rejects_imprimitive_rows() {
        assert!(complete_bottom_rows(&[vec![2, 4, 6]], 3).is_err());
        let g = complete_bottom_rows(&[vec![3, 5, 7]], 3).unwrap();
        assert_eq!(det_exact(&g), BigInt::from(1));
        assert_eq!((g[(2, 0)], g[(2, 1)], g[(2, 2)]), (3, 5, 7));
    }
}
