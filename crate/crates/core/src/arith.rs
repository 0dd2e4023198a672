//! Integer number theory on `u64`: gcd, modular exponentiation, primality
//! and factorization.
//!
//! Factoring uses trial division up to [`TRIAL_LIMIT`] followed by Brent's
//! variant of Pollard rho on the cofactor. Primality is the deterministic
//! Miller-Rabin test for 64-bit inputs, so a returned factorization is never
//! probabilistically wrong: if rho gives up, [`factorize`] fails instead.

use crate::error::{Error, Result};

pub const TRIAL_LIMIT: u64 = 1_000_000;

/// Total number of rho iterations (over all restarts) before giving up.
pub const RHO_EFFORT: u64 = 1 << 24;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    // These twelve bases are deterministic for all n < 2^64.
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs sorted by prime.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let mut q = 2u64;
    while q <= TRIAL_LIMIT && q * q <= rest {
        while rest.is_multiple_of(q) {
            primes.push(q);
            rest /= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let mut stack = vec![rest];
        let mut budget = RHO_EFFORT;
        while let Some(c) = stack.pop() {
            if c == 1 {
                continue;
            }
            if is_prime(c) {
                primes.push(c);
                continue;
            }
            let f = find_factor(c, &mut budget).ok_or(Error::ResourceLimit {
                what: "factoring",
                value: n,
            })?;
            stack.push(f);
            stack.push(c / f);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// Nontrivial factor of composite `n`, consuming from `budget`.
fn find_factor(n: u64, budget: &mut u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut c = 1u64;
    while *budget > 0 {
        if let Some(f) = brent_rho(n, c, budget) {
            return Some(f);
        }
        c += 1;
    }
    None
}

fn brent_rho(n: u64, c: u64, budget: &mut u64) -> Option<u64> {
    let step = |x: u64| (mul_mod(x, x, n) + c) % n;
    const BATCH: u64 = 128;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let lim = BATCH.min(r - k);
            for _ in 0..lim {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            *budget = budget.saturating_sub(lim);
            g = gcd(q, n);
            k += lim;
        }
        r *= 2;
        if g == 1 && *budget == 0 {
            return None;
        }
    }
    if g == n {
        // The batched product hit zero mod n; replay the last batch singly.
        loop {
            ys = step(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Multiplicative order of `a` modulo `m`, given the factorization of the
/// group exponent `lambda` (any multiple of the order).
pub fn order_from_factors(mut is_one: impl FnMut(u64) -> bool, lambda: u64, factors: &[(u64, u32)]) -> u64 {
    let mut ord = lambda;
    for &(q, _) in factors {
        while ord.is_multiple_of(q) && is_one(ord / q) {
            ord /= q;
        }
    }
    ord
}
