//! Minors `[M]_{I,J}` and wedge norms of bottom row blocks.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::{Error, Result};

/// Row and column selections, 1-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinorIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::Index(format!(
                "row and column selections must be non-empty and of equal length, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        for sel in [&rows, &cols] {
            if sel[0] == 0 || sel.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Index(format!("selection {sel:?} must be strictly increasing from 1")));
            }
        }
        Ok(Self { rows, cols })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn check(&self, nrows: usize, ncols: usize) -> Result<()> {
        let r = *self.rows.last().unwrap_or(&0);
        let c = *self.cols.last().unwrap_or(&0);
        if r > nrows || c > ncols {
            return Err(Error::Index(format!(
                "minor {:?} x {:?} does not fit a {nrows}x{ncols} matrix",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// All strictly increasing `k`-subsets of `1..=m`, lexicographically.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let mut i = k;
        while i > 0 && cur[i - 1] == m - k + i {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Fraction-free (Bareiss) determinant over an integral domain; exact for `BigInt` and
/// `BigRational`.
pub fn det_ring<T: Clone + Num>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        T::zero() - d
    } else {
        d
    }
}

pub fn det_exact(m: &IntMatrix) -> BigInt {
    let rows = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| BigInt::from(m[(i, j)])).collect()).collect();
    det_ring(rows)
}

/// Minor of a matrix given as rows over any integral domain.
pub fn minor_ring<T: Clone + Num>(m: &[Vec<T>], idx: &MinorIndex) -> Result<T> {
    idx.check(m.len(), m.first().map_or(0, |r| r.len()))?;
    let sub = idx.rows.iter().map(|&i| idx.cols.iter().map(|&j| m[i - 1][j - 1].clone()).collect()).collect();
    Ok(det_ring(sub))
}

pub fn minor_exact(m: &IntMatrix, idx: &MinorIndex) -> Result<BigInt> {
    idx.check(m.nrows(), m.ncols())?;
    let sub = idx
        .rows
        .iter()
        .map(|&i| idx.cols.iter().map(|&j| BigInt::from(m[(i - 1, j - 1)])).collect())
        .collect();
    Ok(det_ring(sub))
}

/// Alias of [`minor_exact`], the primary integer entry point.
pub fn minor(m: &IntMatrix, idx: &MinorIndex) -> Result<BigInt> {
    minor_exact(m, idx)
}

struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn new() -> Self {
        Self { sum: 0.0, c: 0.0 }
    }
    fn add(&mut self, v: f64) {
        // Neumaier's variant, robust when |v| > |sum|
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }
    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

fn det_small(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    match n {
        0 => 1.0,
        1 => a[0][0],
        _ => {
            // Laplace expansion along the first row with compensated summation
            let mut acc = Kahan::new();
            for j in 0..n {
                if a[0][j] == 0.0 {
                    continue;
                }
                let sub: Vec<Vec<f64>> =
                    a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect()).collect();
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc.add(s * a[0][j] * det_small(&sub));
            }
            acc.value()
        }
    }
}

/// Floating-point minor: compensated Laplace expansion up to size 4, LU beyond.
pub fn minor_real(m: &DMatrix<f64>, idx: &MinorIndex) -> Result<f64> {
    idx.check(m.nrows(), m.ncols())?;
    let sub: Vec<Vec<f64>> = idx.rows.iter().map(|&i| idx.cols.iter().map(|&j| m[(i - 1, j - 1)]).collect()).collect();
    if sub.len() <= 4 {
        Ok(det_small(&sub))
    } else {
        let k = sub.len();
        Ok(DMatrix::from_fn(k, k, |i, j| sub[i][j]).lu().determinant())
    }
}

/// Sum of squares of all `(i+1) x (i+1)` minors of the bottom `i+1` rows.
pub fn wedge_norm_sq(m: &DMatrix<f64>, i: usize) -> Result<f64> {
    let (r, c) = (m.nrows(), m.ncols());
    if i >= r || i >= c {
        return Err(Error::Index(format!("wedge index {i} out of range for a {r}x{c} matrix")));
    }
    let rows: Vec<usize> = (r - i..=r).collect();
    let mut acc = Kahan::new();
    for cols in subsets(c, i + 1) {
        let v = minor_real(m, &MinorIndex { rows: rows.clone(), cols })?;
        acc.add(v * v);
    }
    Ok(acc.value())
}

pub fn wedge_norm_sq_ring<T: Clone + Num>(m: &[Vec<T>], i: usize) -> Result<T> {
    let r = m.len();
    let c = m.first().map_or(0, |x| x.len());
    if i >= r || i >= c {
        return Err(Error::Index(format!("wedge index {i} out of range for a {r}x{c} matrix")));
    }
    let rows: Vec<usize> = (r - i..=r).collect();
    let mut acc = T::zero();
    for cols in subsets(c, i + 1) {
        let v = minor_ring(m, &MinorIndex { rows: rows.clone(), cols })?;
        acc = acc + v.clone() * v;
    }
    Ok(acc)
}

pub fn wedge_norm_sq_exact(m: &IntMatrix, i: usize) -> Result<BigInt> {
    let rows: Vec<Vec<BigInt>> =
        (0..m.nrows()).map(|a| (0..m.ncols()).map(|b| BigInt::from(m[(a, b)])).collect()).collect();
    wedge_norm_sq_ring(&rows, i)
}
