//! Parsers for the textual argument formats: complex scalars, lists and matrices.

use anyhow::{anyhow, bail, Context, Result};
use nalgebra::DMatrix;
use rankin_core::matrix::IntMatrix;
use rankin_core::C64;

/// Parse `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`. Exponents such as `1e-3+2e2i` are accepted.
pub fn complex(text: &str) -> Result<C64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        bail!("empty complex number");
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        let re: f64 = s.parse().with_context(|| format!("invalid complex number {text:?}"))?;
        return Ok(C64::new(re, 0.0));
    };
    // split at the last sign that is not the leading one and does not follow an exponent marker
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse().with_context(|| format!("invalid imaginary part in {text:?}"))?,
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse().with_context(|| format!("invalid real part in {text:?}"))?
    };
    Ok(C64::new(re, im))
}

pub fn complex_list(text: &str) -> Result<Vec<C64>> {
    text.split(',').map(complex).collect()
}

pub fn float_list(text: &str) -> Result<Vec<f64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|v| v.trim().parse::<f64>().with_context(|| format!("invalid number {v:?} in {text:?}")))
        .collect()
}

fn rows<T: std::str::FromStr>(text: &str) -> Result<Vec<Vec<T>>> {
    let rows: Vec<Vec<T>> = text
        .split(';')
        .map(|r| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|v| !v.is_empty())
                .map(|v| v.parse::<T>().map_err(|_| anyhow!("invalid matrix entry {v:?}")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let c = rows.first().map_or(0, |r| r.len());
    if c == 0 || rows.iter().any(|r| r.len() != c) {
        bail!("matrix rows must be non-empty and of equal length: {text:?}");
    }
    Ok(rows)
}

/// Rows separated by `;`, entries by `,` or spaces: `"1,2;3,5"`.
pub fn int_matrix(text: &str) -> Result<IntMatrix> {
    let r = rows::<i64>(text)?;
    Ok(IntMatrix::from_fn(r.len(), r[0].len(), |i, j| r[i][j]))
}

pub fn real_matrix(text: &str) -> Result<DMatrix<f64>> {
    let r = rows::<f64>(text)?;
    Ok(DMatrix::from_fn(r.len(), r[0].len(), |i, j| r[i][j]))
}

pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

pub fn format_int_matrix(m: &IntMatrix) -> String {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn format_floats(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
