use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::int::{int, Int};
use crate::rational::Rational;
use crate::surd::QuadraticSurd;

/// An element of PGL(2,Z): `x -> (a x + b) / (c x + d)` with `ad - bc = +-1`.
///
/// The matrix is stored with its first nonzero entry positive, so `M` and
/// `-M` give the same value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(bound(serialize = "T: Int"))]
pub struct MobiusMap<T> {
    #[serde(with = "crate::serde_int")]
    a: T,
    #[serde(with = "crate::serde_int")]
    b: T,
    #[serde(with = "crate::serde_int")]
    c: T,
    #[serde(with = "crate::serde_int")]
    d: T,
}

impl<T: Int> MobiusMap<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if !det.abs().is_one() {
            return Err(Error::invalid(format!("determinant {det} is not +1 or -1")));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: T, b: T, c: T, d: T) -> Self {
        let first = [&a, &b, &c, &d].into_iter().find(|v| !v.is_zero()).cloned();
        if first.is_some_and(|v| v.is_negative()) {
            MobiusMap { a: -a, b: -b, c: -c, d: -d }
        } else {
            MobiusMap { a, b, c, d }
        }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    pub fn identity() -> Self {
        Self::normalized(T::one(), T::zero(), T::zero(), T::one())
    }

    /// `x -> -1/x`
    pub fn s() -> Self {
        Self::normalized(T::zero(), -T::one(), T::one(), T::zero())
    }

    /// `x -> x + 1`
    pub fn t() -> Self {
        Self::normalized(T::one(), T::one(), T::zero(), T::one())
    }

    /// `x -> 1 + 1/x`
    pub fn t_tilde() -> Self {
        Self::normalized(T::one(), T::one(), T::one(), T::zero())
    }

    /// `x -> -x`
    pub fn v() -> Self {
        Self::normalized(-T::one(), T::zero(), T::zero(), T::one())
    }

    /// `x -> 1/x`
    pub fn u() -> Self {
        Self::normalized(T::zero(), T::one(), T::one(), T::zero())
    }

    /// `x -> 1 - x`
    pub fn k() -> Self {
        Self::normalized(-T::one(), T::one(), T::zero(), T::one())
    }

    pub fn entries(&self) -> (&T, &T, &T, &T) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Trace of the normalized representative; only `|trace|` is invariant.
    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// `self^n` for a non-negative exponent of the integer type.
    pub fn pow_int(&self, n: &T) -> Self {
        assert!(!n.is_negative(), "negative exponent");
        let two = int::<T>(2);
        let mut n = n.clone();
        let mut base = self.clone();
        let mut acc = Self::identity();
        while n.is_positive() {
            let (q, r) = n.div_rem(&two);
            if r.is_one() {
                acc = &acc * &base;
            }
            base = &base * &base;
            n = q;
        }
        acc
    }

    pub fn apply_rational(&self, x: &Rational<T>) -> Rational<T> {
        let (n, m) = (x.numer().clone(), x.denom().clone());
        let num = self.a.clone() * n.clone() + self.b.clone() * m.clone();
        let den = self.c.clone() * n + self.d.clone() * m;
        Rational::new(num, den).expect("invertible map never produces 0/0")
    }

    pub fn apply_surd(&self, x: &QuadraticSurd<T>) -> QuadraticSurd<T> {
        let (p, q, d, r) = (x.p(), x.q(), x.d(), x.r());
        // (n1 + n2 sqrt d) / (d1 + d2 sqrt d), rationalised by the conjugate.
        let n1 = self.a.clone() * p.clone() + self.b.clone() * r.clone();
        let n2 = self.a.clone() * q.clone();
        let d1 = self.c.clone() * p.clone() + self.d.clone() * r.clone();
        let d2 = self.c.clone() * q.clone();
        let rp = n1.clone() * d1.clone() - n2.clone() * d2.clone() * d.clone();
        let rq = n2 * d1.clone() - n1 * d2.clone();
        let rr = d1.clone() * d1 - d2.clone() * d2 * d.clone();
        QuadraticSurd::with_kernel(rp, rq, d.clone(), rr)
    }
}

impl<T: Int> Mul for &MobiusMap<T> {
    type Output = MobiusMap<T>;

    /// `(self * rhs)(x) = self(rhs(x))`.
    fn mul(self, rhs: &MobiusMap<T>) -> MobiusMap<T> {
        MobiusMap::normalized(
            self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.c.clone(),
            self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.d.clone(),
            self.c.clone() * rhs.a.clone() + self.d.clone() * rhs.c.clone(),
            self.c.clone() * rhs.b.clone() + self.d.clone() * rhs.d.clone(),
        )
    }
}

impl<T: Int> Mul for MobiusMap<T> {
    type Output = MobiusMap<T>;

    fn mul(self, rhs: MobiusMap<T>) -> MobiusMap<T> {
        &self * &rhs
    }
}

impl<T: Int> fmt::Display for MobiusMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),({},{}))", self.a, self.b, self.c, self.d)
    }
}

impl<'de, T: Int> Deserialize<'de> for MobiusMap<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Int")]
        struct Raw<T> {
            #[serde(with = "crate::serde_int")]
            a: T,
            #[serde(with = "crate::serde_int")]
            b: T,
            #[serde(with = "crate::serde_int")]
            c: T,
            #[serde(with = "crate::serde_int")]
            d: T,
        }
        let raw = Raw::<T>::deserialize(d)?;
        MobiusMap::new(raw.a, raw.b, raw.c, raw.d).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = MobiusMap<i64>;

    fn m(a: i64, b: i64, c: i64, d: i64) -> M {
        M::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn sign_normalisation() {
        assert_eq!(m(-1, -1, 0, -1), M::t());
        assert_eq!(m(0, 1, -1, 0), M::s());
        assert_eq!(M::s().entries(), (&0, &1, &-1, &0));
        assert!(M::from_i64(2, 0, 0, 1).is_err());
    }

    #[test]
    fn generator_relations() {
        let (s, t, u, v, k) = (M::s(), M::t(), M::u(), M::v(), M::k());
        assert_eq!(&v * &u, s);
        assert_eq!(&k * &v, t);
        assert_eq!(s.pow(2), M::identity());
        assert_eq!((&v * &u).pow(2), M::identity());
        assert_eq!((&k * &u).pow(3), M::identity());
        assert_eq!(&t * &t.inverse(), M::identity());
    }

    #[test]
    fn rational_action_is_projective() {
        let inf = Rational::<i64>::infinity();
        assert_eq!(M::t().apply_rational(&inf), inf);
        assert_eq!(M::s().apply_rational(&Rational::zero()), inf);
        assert_eq!(M::t_tilde().apply_rational(&inf), Rational::one());
        assert_eq!(m(2, 1, 1, 1).apply_rational(&Rational::from_i64(2)), Rational::new(5, 3).unwrap());
    }

    #[test]
    fn surd_action() {
        let sqrt2 = QuadraticSurd::new(0i64, 1, 2, 1).unwrap();
        assert_eq!(M::s().apply_surd(&sqrt2), QuadraticSurd::new(0, -1, 2, 2).unwrap());
        assert_eq!(M::identity().apply_surd(&sqrt2), sqrt2);
        assert_eq!(M::t_tilde().apply_surd(&QuadraticSurd::new(1, 1, 2, 1).unwrap()), sqrt2);
    }
}
