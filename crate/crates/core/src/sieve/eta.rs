//! The divisor sum `eta_s(m) = sum_{ab = m} (a / b)^s`.

use crate::{Error, Result, C64};

/// `sum_{ab = m} (a / b)^s` over ordered factorisations of `m`.
pub fn eta(s: C64, m: u64) -> Result<C64> {
    if m == 0 {
        return Err(Error::invalid("eta is defined for m >= 1"));
    }
    let lm = (m as f64).ln();
    let mut total = C64::new(0.0, 0.0);
    let mut a = 1u64;
    while a * a <= m {
        if m % a == 0 {
            let b = m / a;
            // (a/b)^s with log(a/b) = 2 log a - log m
            let l = 2.0 * (a as f64).ln() - lm;
            total += (s * l).exp();
            if a != b {
                total += (-s * l).exp();
            }
        }
        a += 1;
    }
    Ok(total)
}

/// `|eta_{it}(p)| = 2 |cos(t log p)|` for a prime `p`.
pub fn eta_prime_abs(t: f64, p: u64) -> f64 {
    2.0 * (t * (p as f64).ln()).cos().abs()
}
