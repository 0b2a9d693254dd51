//! Small integer helpers: primality, modular reduction and inverses, and
//! checked accumulation.

use crate::error::{Error, Result};

/// Deterministic trial-division primality test.
pub fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3i64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_prime(p: i64) -> Result<i64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
pub fn modp(a: i64, p: i64) -> i64 {
    a.rem_euclid(p)
}

/// Inverse of `a` modulo the prime `p`, or `None` when `a ≡ 0`.
pub fn inv_mod(a: i64, p: i64) -> Option<i64> {
    let a = modp(a, p);
    if a == 0 {
        return None;
    }
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some((t0.rem_euclid(p as i128)) as i64)
}

pub fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

/// Checked `base^exp` on unsigned 128-bit integers.
pub fn checked_pow(base: u128, exp: u32) -> Result<u128> {
    base.checked_pow(exp).ok_or(Error::Overflow)
}

/// Primes in `[lo, hi]`.
pub fn primes_between(lo: i64, hi: i64) -> Vec<i64> {
    (lo.max(2)..=hi).filter(|&p| is_prime(p)).collect()
}

/// Distinct prime divisors of `|n|` (empty for 0, ±1).
pub fn prime_divisors(n: &num_bigint::BigInt) -> Vec<u64> {
    use num_traits::{One, ToPrimitive, Zero};
    let mut m = num_bigint::BigInt::from(n.magnitude().clone());
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut d: u64 = 2;
    while !m.is_one() {
        let bd = num_bigint::BigInt::from(d);
        if &bd * &bd > m {
            if let Some(v) = m.to_u64() {
                out.push(v);
            }
            break;
        }
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<i64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(1));
        assert!(!is_prime(-7));
        assert!(is_prime(7919));
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 13] {
            for a in 1..p {
                let b = inv_mod(a, p).unwrap();
                assert_eq!(modp(a * b, p), 1);
            }
            assert_eq!(inv_mod(0, p), None);
            assert_eq!(inv_mod(p, p), None);
        }
        assert_eq!(inv_mod(-1, 5), Some(4));
    }

    #[test]
    fn divisors() {
        use num_bigint::BigInt;
        assert_eq!(prime_divisors(&BigInt::from(-12)), vec![2, 3]);
        assert_eq!(prime_divisors(&BigInt::from(1)), Vec::<u64>::new());
        assert_eq!(prime_divisors(&BigInt::from(97)), vec![97]);
        assert_eq!(prime_divisors(&BigInt::from(0)), Vec::<u64>::new());
    }
}
