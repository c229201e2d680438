use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::mobius::MobiusMap;
use crate::rational::Rational;
use crate::surd::{parse_surd_or_rational, QuadraticSurd};

/// A point of the extended line with an exact finite description: a rational
/// (or infinity) or a real quadratic irrational.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged, bound = "T: Int")]
pub enum Real<T> {
    Rational(Rational<T>),
    Surd(QuadraticSurd<T>),
}

impl<T: Int> Real<T> {
    pub fn is_rational(&self) -> bool {
        matches!(self, Real::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational<T>> {
        match self {
            Real::Rational(r) => Some(r),
            Real::Surd(_) => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd<T>> {
        match self {
            Real::Surd(s) => Some(s),
            Real::Rational(_) => None,
        }
    }

    pub fn apply(&self, m: &MobiusMap<T>) -> Self {
        match self {
            Real::Rational(r) => Real::Rational(m.apply_rational(r)),
            Real::Surd(s) => Real::Surd(m.apply_surd(s)),
        }
    }

    /// `-x`
    pub fn neg(&self) -> Self {
        self.apply(&MobiusMap::v())
    }

    /// `1/x`
    pub fn recip(&self) -> Self {
        self.apply(&MobiusMap::u())
    }

    /// `-1/x`
    pub fn neg_recip(&self) -> Self {
        self.apply(&MobiusMap::s())
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Real::Rational(r) => r.is_negative(),
            Real::Surd(s) => s.is_negative(),
        }
    }
}

impl<T: Int> PartialEq for Real<T> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Real::Rational(a), Real::Rational(b)) => a == b,
            (Real::Surd(a), Real::Surd(b)) => a == b,
            _ => false,
        }
    }
}

impl<T: Int> Eq for Real<T> {}

impl<T: Int> From<Rational<T>> for Real<T> {
    fn from(r: Rational<T>) -> Self {
        Real::Rational(r)
    }
}

impl<T: Int> From<QuadraticSurd<T>> for Real<T> {
    fn from(s: QuadraticSurd<T>) -> Self {
        Real::Surd(s)
    }
}

impl<T: Int> fmt::Display for Real<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(r) => r.fmt(f),
            Real::Surd(s) => s.fmt(f),
        }
    }
}

/// Accepts the surd syntax and `P/Q`; a perfect-square radicand collapses to
/// a rational.
impl<T: Int> FromStr for Real<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match parse_surd_or_rational::<T>(s)? {
            Ok(surd) => Real::Surd(surd),
            Err(rat) => Real::Rational(rat),
        })
    }
}
