use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::int::Int;

/// Decimal digits of pi after the point.
pub const PI_DIGITS: &str = "\
1415926535897932384626433832795028841971693993751058209749445923078164062862\
0899862803482534211706798214808651328230664709384460955058223172535940812848\
1117450284102701938521105559644622948954930381964428810975665933446128475648\
2337867831652712019091456485669234603486104543266482133936072602491412737245\
870066063155881748815209209628292540917153643678925903600113305305488204665";

/// Partial quotients of `e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]`.
pub fn e_terms<T: Int>() -> impl Iterator<Item = Result<T>> + Clone + Send + Sync {
    (0u64..).map(|i| {
        let t = match i {
            0 => 2,
            i if i % 3 == 2 => 2 * (i + 1) / 3,
            _ => 1,
        };
        T::from_u64(t).ok_or_else(|| Error::invalid("term overflows the integer type"))
    })
}

pub fn cf_of_e<T: Int>() -> ContinuedFraction<T> {
    ContinuedFraction::stream(false, e_terms())
}

/// Terms shared by every number in `(n1/d1, n2/d2)`, by running Euclid on
/// both ends. Fails with `PrecisionExhausted` once they disagree.
#[derive(Clone, Debug)]
pub struct BracketTerms {
    lo: (BigInt, BigInt),
    hi: (BigInt, BigInt),
    emitted: usize,
    exhausted: bool,
}

impl BracketTerms {
    /// `lo < hi`, both positive with positive denominators.
    pub fn new(lo: (BigInt, BigInt), hi: (BigInt, BigInt)) -> Self {
        BracketTerms { lo, hi, emitted: 0, exhausted: false }
    }

    /// The bracket `[D, D + 1] / 10^k` of a decimal string `int.frac`.
    pub fn from_decimal(int_part: &str, frac: &str) -> Result<Self> {
        let digits: BigInt = format!("{int_part}{frac}")
            .parse()
            .map_err(|_| Error::parse("bad decimal constant"))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        Ok(Self::new((digits.clone(), scale.clone()), (digits + 1, scale)))
    }
}

impl Iterator for BracketTerms {
    type Item = Result<BigInt>;

    fn next(&mut self) -> Option<Result<BigInt>> {
        let fail = Err(Error::PrecisionExhausted { terms: self.emitted });
        if self.exhausted || self.lo.1.is_zero() || self.hi.1.is_zero() {
            self.exhausted = true;
            return Some(fail);
        }
        let (q1, r1) = self.lo.0.div_mod_floor(&self.lo.1);
        let (q2, r2) = self.hi.0.div_mod_floor(&self.hi.1);
        if q1 != q2 {
            self.exhausted = true;
            return Some(fail);
        }
        // x -> 1/(x - q) swaps the ends.
        let lo = std::mem::take(&mut self.lo.1);
        let hi = std::mem::take(&mut self.hi.1);
        self.lo = (hi, r2);
        self.hi = (lo, r1);
        self.emitted += 1;
        Some(Ok(q1))
    }
}

fn narrow<T: Int>(t: Result<BigInt>) -> Result<T> {
    let t = t?;
    let v = t.to_i64().ok_or_else(|| Error::invalid(format!("term {t} overflows")))?;
    T::from_i64(v).ok_or_else(|| Error::invalid(format!("term {t} overflows the integer type")))
}

/// Pi as certified by the embedded digits; terms past the certified prefix
/// fail with `PrecisionExhausted`.
pub fn pi_terms<T: Int>() -> impl Iterator<Item = Result<T>> + Clone + Send + Sync {
    BracketTerms::from_decimal("3", PI_DIGITS).expect("embedded constant parses").map(narrow::<T>)
}

pub fn cf_of_pi<T: Int>() -> ContinuedFraction<T> {
    ContinuedFraction::stream(false, pi_terms())
}

/// Number of partial quotients of pi the embedded digits certify.
pub fn pi_capacity() -> usize {
    pi_terms::<i64>().take_while(|t| t.is_ok()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// pi * 10^n by Machin's formula, with guard digits.
    fn machin_pi(n: u32) -> BigInt {
        let scale = num_traits::pow(BigInt::from(10), (n + 10) as usize);
        let arctan_inv = |x: i64| {
            let x2 = BigInt::from(x * x);
            let mut term = &scale / x;
            let mut sum = term.clone();
            let mut k = 1i64;
            while !term.is_zero() {
                term /= &x2;
                let t = &term / (2 * k + 1);
                if k % 2 == 1 {
                    sum -= t;
                } else {
                    sum += t;
                }
                k += 1;
            }
            sum
        };
        let pi = 16 * arctan_inv(5) - 4 * arctan_inv(239);
        pi / num_traits::pow(BigInt::from(10), 10)
    }

    #[test]
    fn embedded_digits_match_machin() {
        let n = PI_DIGITS.len() as u32;
        assert_eq!(machin_pi(n).to_string(), format!("3{PI_DIGITS}"));
    }

    #[test]
    fn pi_prefix_and_capacity() {
        let cf = cf_of_pi::<i64>();
        assert_eq!(cf.prefix(11).unwrap(), vec![3, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3]);
        let cap = pi_capacity();
        assert!(cap >= 120, "only {cap} terms certified");
        assert_eq!(cf.prefix(cap + 1), Err(Error::PrecisionExhausted { terms: cap }));
    }

    #[test]
    fn e_prefix() {
        let cf = cf_of_e::<i64>();
        assert_eq!(cf.prefix(12).unwrap(), vec![2, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8]);
        let t = cf.prefix(300).unwrap();
        for k in 1..99 {
            assert_eq!((t[3 * k], t[3 * k + 1]), (1, 1));
        }
    }

    #[test]
    fn bracket_agrees_only_on_common_terms() {
        // (22/7, 23/7): 22/7 = [3; 7], 23/7 = [3; 3, 2]
        let mut b = BracketTerms::new((BigInt::from(22), BigInt::from(7)), (BigInt::from(23), BigInt::from(7)));
        assert_eq!(b.next(), Some(Ok(BigInt::from(3))));
        assert_eq!(b.next(), Some(Err(Error::PrecisionExhausted { terms: 1 })));
        assert_eq!(b.next(), Some(Err(Error::PrecisionExhausted { terms: 1 })));
    }
}
