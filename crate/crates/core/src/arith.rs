//! Small integer helpers shared by the lattice and field code.

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(a as i128, b as i128) as u64
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u64(a, b) * b
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub(crate) fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `x mod m` into `[0, m)`.
#[inline]
pub fn rem(x: i128, m: i128) -> i128 {
    x.rem_euclid(m)
}

/// Exact `p`-adic logarithm, `None` when `n` is not a power of `p`.
pub fn log_exact(mut n: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        e += 1;
    }
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_bezout() {
        for a in -30i128..30 {
            for b in -30i128..30 {
                let (g, s, t) = xgcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(s * a + t * b, g);
            }
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), alloc::vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), alloc::vec![]);
        assert!(is_prime(97) && !is_prime(91));
        assert_eq!(log_exact(81, 3), Some(4));
        assert_eq!(log_exact(12, 2), None);
    }
}
