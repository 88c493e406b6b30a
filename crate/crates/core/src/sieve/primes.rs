//! Primality and prime lists.

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if m % p == 0 {
            return m == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % m as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = m - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `<= bound` by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let b = bound as usize;
    let mut composite = vec![false; b + 1];
    let mut out = Vec::new();
    for i in 2..=b {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= b {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in `[lo, hi]` by a segmented sieve of Eratosthenes, each confirmed by Miller-Rabin.
pub fn primes_in_window(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let lo = lo.max(2);
    let root = (hi as f64).sqrt() as u64 + 1;
    let base = primes_up_to(root);
    const SEGMENT: u64 = 1 << 16;
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = (start + SEGMENT - 1).min(hi);
        let mut composite = vec![false; (end - start + 1) as usize];
        for &p in &base {
            if p * p > end {
                break;
            }
            let first = (start.div_ceil(p) * p).max(p * p);
            let mut m = first;
            while m <= end {
                composite[(m - start) as usize] = true;
                m += p;
            }
        }
        out.extend(composite.iter().enumerate().filter(|(_, c)| !**c).map(|(i, _)| start + i as u64));
        start = end + 1;
    }
    debug_assert!(out.iter().all(|p| is_prime(*p)));
    out
}
