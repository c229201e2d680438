use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::int::{int, Int};
use crate::rational::Rational;

/// Terms read by [`eval_decimal`] before it gives up.
pub const DEFAULT_EVAL_TERMS: usize = 100_000;

fn pow10<T: Int>(n: usize) -> T {
    let ten = int::<T>(10);
    (0..n).fold(T::one(), |acc, _| acc * ten.clone())
}

fn digit_len<T: Int>(n: &T) -> usize {
    n.abs().to_string().len()
}

/// `x` rounded to `digits` significant digits, ties away from zero, in plain
/// positional notation.
pub fn round_significant<T: Int>(x: &Rational<T>, digits: usize) -> String {
    assert!(digits > 0, "at least one digit");
    if x.is_infinite() {
        return "inf".into();
    }
    if x.is_zero() {
        return "0".into();
    }
    if x.is_negative() {
        return format!("-{}", round_significant(&-x.clone(), digits));
    }
    let (n, d) = (x.numer().clone(), x.denom().clone());
    // 10^e <= x < 10^(e+1)
    let mut e = digit_len(&n) as i64 - digit_len(&d) as i64;
    let below = |e: i64| {
        if e >= 0 {
            n.clone() < d.clone() * pow10::<T>(e as usize)
        } else {
            n.clone() * pow10::<T>((-e) as usize) < d.clone()
        }
    };
    if below(e) {
        e -= 1;
    }
    let shift = digits as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (n * pow10::<T>(shift as usize), d)
    } else {
        (n, d * pow10::<T>((-shift) as usize))
    };
    let two = int::<T>(2);
    let mut m = (two.clone() * num + den.clone()).div_floor(&(two * den));
    if m == pow10::<T>(digits) {
        m = pow10::<T>(digits - 1);
        e += 1;
    }
    let s = m.to_string();
    if e < 0 {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
    } else if (e as usize) + 1 >= digits {
        format!("{}{}", s, "0".repeat(e as usize + 1 - digits))
    } else {
        let (int_part, frac) = s.split_at(e as usize + 1);
        format!("{int_part}.{frac}")
    }
}

/// `digits` significant digits of the value, rounded to nearest, printed
/// only once every number between two consecutive convergents rounds the
/// same way.
pub fn eval_decimal<T: Int>(cf: &ContinuedFraction<T>, digits: usize) -> Result<String> {
    eval_decimal_with_budget(cf, digits, DEFAULT_EVAL_TERMS)
}

/// As [`eval_decimal`], reading at most `max_terms` terms. Running out gives
/// `PrecisionNotReached` with the error bound reached; a failing term source
/// passes its error through.
pub fn eval_decimal_with_budget<T: Int>(cf: &ContinuedFraction<T>, digits: usize, max_terms: usize) -> Result<String> {
    if digits == 0 {
        return Err(Error::invalid("at least one digit is required"));
    }
    let map = |c: Rational<T>| if cf.s_prefix { -c.recip() } else { c };
    let (mut h, mut h1) = (T::one(), T::zero());
    let (mut k, mut k1) = (T::zero(), T::one());
    let mut prev: Option<Rational<T>> = None;
    let mut width: Option<Rational<T>> = None;
    let mut used = 0;
    let mut src = cf.iter();
    loop {
        let Some(term) = src.next() else {
            // Finite: the last convergent is the value.
            let v = Rational::new(h, k).expect("convergent");
            return Ok(round_significant(&map(v), digits));
        };
        if used == max_terms {
            let achieved = width.map_or(0, |w: Rational<T>| {
                (digit_len(w.denom()) as i64 - digit_len(w.numer()) as i64 - 1).max(0) as usize
            });
            return Err(Error::PrecisionNotReached { terms: used, achieved_digits: achieved });
        }
        let a = term?;
        used += 1;
        let nh = a.clone() * h.clone() + h1;
        let nk = a * k.clone() + k1;
        h1 = h;
        k1 = k;
        h = nh;
        k = nk;
        let c = Rational::new(h.clone(), k.clone()).expect("convergent");
        if let Some(p) = prev.take() {
            let (lo, hi) = (map(p.clone()), map(c.clone()));
            if !lo.is_infinite() && !hi.is_infinite() {
                if (lo.is_negative() == hi.is_negative()) && round_significant(&lo, digits) == round_significant(&hi, digits) {
                    return Ok(round_significant(&hi, digits));
                }
                width = Some(if lo > hi { lo - hi } else { hi - lo });
            }
        }
        prev = Some(c);
    }
}
