use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::int::{int, parse_int, Int};

/// An element of the projective rational line: a reduced fraction or `1/0`.
///
/// `den >= 0`, `gcd(|num|, den) = 1`, and infinity is always stored as `1/0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(bound(serialize = "T: Int"))]
pub struct Rational<T> {
    #[serde(with = "crate::serde_int")]
    num: T,
    #[serde(with = "crate::serde_int")]
    den: T,
}

impl<T: Int> Rational<T> {
    pub fn new(num: T, den: T) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::invalid("0/0 is not a rational number"));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: T, den: T) -> Self {
        if den.is_zero() {
            return Self::infinity();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g.clone(), den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Rational { num, den }
    }

    pub fn from_integer(n: T) -> Self {
        Rational { num: n, den: T::one() }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_integer(int(n))
    }

    pub fn infinity() -> Self {
        Rational { num: T::one(), den: T::zero() }
    }

    pub fn zero() -> Self {
        Self::from_integer(T::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(T::one())
    }

    pub fn numer(&self) -> &T {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn into_parts(self) -> (T, T) {
        (self.num, self.den)
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive() && !self.is_infinite()
    }

    /// Panics on infinity.
    pub fn floor(&self) -> T {
        assert!(!self.is_infinite(), "floor of infinity");
        self.num.div_floor(&self.den)
    }

    pub fn recip(&self) -> Self {
        Self::reduce(self.den.clone(), self.num.clone())
    }
}

// Field operations follow the projective formulas, so `x + inf = inf` and
// `x / 0 = inf` for x != 0; indeterminate forms (inf - inf, 0 * inf) panic.
fn finish<T: Int>(num: T, den: T, op: &str) -> Rational<T> {
    Rational::new(num, den).unwrap_or_else(|_| panic!("indeterminate form in rational {op}"))
}

impl<T: Int> Add for Rational<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        finish(num, self.den * rhs.den, "addition")
    }
}

impl<T: Int> Sub for Rational<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Int> Mul for Rational<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        finish(self.num * rhs.num, self.den * rhs.den, "multiplication")
    }
}

impl<T: Int> Div for Rational<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        finish(self.num * rhs.den, self.den * rhs.num, "division")
    }
}

impl<T: Int> Neg for Rational<T> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.is_infinite() {
            self
        } else {
            Rational { num: -self.num, den: self.den }
        }
    }
}

/// Total order on the extended line with infinity above every finite value.
impl<T: Int> Ord for Rational<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (self.num.clone() * other.den.clone())
                .cmp(&(other.num.clone() * self.den.clone())),
        }
    }
}

impl<T: Int> PartialOrd for Rational<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Int> fmt::Display for Rational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<T: Int> FromStr for Rational<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "∞" | "1/0") {
            return Ok(Self::infinity());
        }
        match s.split_once('/') {
            Some((n, d)) => Self::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Self::from_integer(parse_int(s)?)),
        }
    }
}

impl<'de, T: Int> Deserialize<'de> for Rational<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Int")]
        struct Raw<T> {
            #[serde(with = "crate::serde_int")]
            num: T,
            #[serde(with = "crate::serde_int")]
            den: T,
        }
        let raw = Raw::<T>::deserialize(d)?;
        Rational::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational<i64>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(q(6, -4), q(-3, 2));
        assert_eq!(q(-5, 0), Q::infinity());
        assert_eq!(Q::infinity().numer(), &1);
        assert!(Q::new(0, 0).is_err());
    }

    #[test]
    fn projective_arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 0) + q(7, 3), Q::infinity());
        assert_eq!(q(3, 1) / q(0, 1), Q::infinity());
        assert_eq!(Q::infinity().recip(), Q::zero());
        assert_eq!(-Q::infinity(), Q::infinity());
    }

    #[test]
    #[should_panic(expected = "indeterminate")]
    fn indeterminate_panics() {
        let _ = Q::infinity() * Q::zero();
    }

    #[test]
    fn floor_and_order() {
        assert_eq!(q(-7, 2).floor(), -4);
        assert_eq!(q(355, 113).floor(), 3);
        assert!(q(22, 7) > q(355, 113));
        assert!(Q::infinity() > q(i64::MAX / 2, 1));
    }

    #[test]
    fn parse_and_display() {
        for s in ["355/113", "-2", "inf", "0"] {
            let r: Q = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/-6".parse::<Q>().unwrap(), q(-2, 3));
        assert!("1/x".parse::<Q>().is_err());
    }

    #[test]
    fn json_uses_named_string_fields() {
        let json = serde_json::to_string(&q(-3, 7)).unwrap();
        assert_eq!(json, r#"{"num":"-3","den":"7"}"#);
        let back: Q = serde_json::from_str(r#"{"num":"6","den":"-4"}"#).unwrap();
        assert_eq!(back, q(-3, 2));
        assert!(serde_json::from_str::<Q>(r#"{"num":"0","den":"0"}"#).is_err());
    }
}
