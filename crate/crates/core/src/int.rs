//! Integer abstraction shared by the exact types.
//!
//! Everything is written against [`Int`], which `BigInt` and the primitive
//! signed integers satisfy. Fixed-width instantiations overflow like ordinary
//! Rust integers (panic in debug builds), so the big-integer aliases are the
//! ones to use for anything that iterates.

use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait Int:
    Integer
    + Signed
    + Roots
    + Clone
    + FromPrimitive
    + ToPrimitive
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + FromPrimitive
        + ToPrimitive
        + Hash
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

#[inline]
pub fn int<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("integer type too narrow for constant")
}

pub fn parse_int<T: Int>(s: &str) -> Result<T> {
    let s = s.trim();
    let digits = s.strip_prefix('+').unwrap_or(s);
    if digits.is_empty() {
        return Err(Error::parse("empty integer"));
    }
    T::from_str_radix(digits, 10).map_err(|_| Error::parse(format!("not an integer: {s:?}")))
}

/// Floor of the square root; `n` must be non-negative.
pub fn isqrt<T: Int>(n: &T) -> T {
    assert!(!n.is_negative(), "square root of a negative integer");
    n.sqrt()
}

pub fn exact_sqrt<T: Int>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    (r.clone() * r.clone() == *n).then_some(r)
}

const TRIAL_PRIME_LIMIT: u32 = 10_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_PRIME_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

/// Splits a positive `n` as `kernel * root^2`.
///
/// Exact whenever the cofactor left after trial division by the primes below
/// 10^4 is 1, a prime, a product of two distinct primes or a perfect square,
/// which covers every `n < 10^12`. Beyond that a repeated large prime factor
/// can survive in the kernel; the split is still a deterministic function of
/// `n`.
pub fn squarefree_split<T: Int>(n: &T) -> (T, T) {
    assert!(n.is_positive(), "squarefree split of a non-positive integer");
    let mut m = n.clone();
    let mut kernel = T::one();
    let mut root = T::one();
    for &p in small_primes() {
        let pt = T::from_u32(p).expect("prime fits");
        if pt.clone() * pt.clone() > m {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&pt);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        for _ in 0..e / 2 {
            root = root * pt.clone();
        }
        if e % 2 == 1 {
            kernel = kernel * pt.clone();
        }
    }
    if !m.is_one() {
        match exact_sqrt(&m) {
            Some(s) => root = root * s,
            None => kernel = kernel * m,
        }
    }
    (kernel, root)
}

pub fn gcd3<T: Int>(a: &T, b: &T, c: &T) -> T {
    a.gcd(b).gcd(c)
}

/// `num_integer::Integer::div_floor` for signed values.
#[inline]
pub fn floor_div<T: Int>(a: &T, b: &T) -> T {
    a.div_floor(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn squarefree_small() {
        assert_eq!(squarefree_split(&72i64), (2, 6));
        assert_eq!(squarefree_split(&901i64), (901, 1));
        assert_eq!(squarefree_split(&(4 * 95i64)), (95, 2));
        assert_eq!(squarefree_split(&1i64), (1, 1));
    }

    #[test]
    fn squarefree_large_prime_square() {
        // 10007 is the first prime above the trial limit.
        let p = BigInt::from(10_007);
        let n = &p * &p * BigInt::from(3);
        assert_eq!(squarefree_split(&n), (BigInt::from(3), p));
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&49i64), Some(7));
        assert_eq!(exact_sqrt(&50i64), None);
        assert_eq!(exact_sqrt(&-4i64), None);
    }

    #[test]
    fn parse_accepts_sign() {
        assert_eq!(parse_int::<i64>("+12").unwrap(), 12);
        assert_eq!(parse_int::<i64>("-3").unwrap(), -3);
        assert!(parse_int::<i64>("x").is_err());
        assert!(parse_int::<i64>("").is_err());
    }
}
