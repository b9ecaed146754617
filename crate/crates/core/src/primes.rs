//! Primality and least prime factors for 64-bit integers.

use crate::error::{Error, Result};

// Deterministic for every n < 2^64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const TRIAL_LIMIT: u64 = 1 << 16;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller–Rabin with a fixed witness set.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of an odd
/// composite `n`.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut r, mut q) = (2u64, 2u64, 1u64, 1u64, 1u64);
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn least_prime_factor(n: u64) -> u64 {
    if is_prime(n) {
        return n;
    }
    let d = pollard_brent(n);
    least_prime_factor(d).min(least_prime_factor(n / d))
}

/// Least `d >= 2` dividing `n`; always prime, and equal to `n` iff `n` is prime.
pub fn smallest_divisor_ge2(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::invalid(format!("smallest divisor needs n >= 2, got {n}")));
    }
    let mut d = 2;
    while d < TRIAL_LIMIT && d * d <= n {
        if n.is_multiple_of(d) {
            return Ok(d);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if d * d > n {
        return Ok(n);
    }
    Ok(least_prime_factor(n))
}

/// `e - 1` and `e + 1` are both prime.
pub fn is_twin_prime_pair(e: u64) -> bool {
    (3..u64::MAX).contains(&e) && is_prime(e - 1) && is_prime(e + 1)
}
