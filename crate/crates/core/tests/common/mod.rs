#![allow(dead_code)]

use jimm_core::{is_noble, BigMobius, BigRational, BigReal, BigSurd, GeneratorWord, Letter, Real};
use num_traits::One;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

/// Fixed-seed proptest settings.
pub fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..ProptestConfig::default() }
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn surd(p: i64, q: i64, d: i64, r: i64) -> BigSurd {
    BigSurd::new(big(p), big(q), big(d), big(r)).unwrap()
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d)).unwrap()
}

fn surd_in(m: i64, d_max: i64) -> impl Strategy<Value = BigSurd> {
    (-m..=m, 1..=m, any::<bool>(), 2..=d_max, 1..=m).prop_filter_map("square discriminant", |(p, q, neg, d, r)| {
        BigSurd::new(big(p), big(if neg { -q } else { q }), big(d), big(r)).ok()
    })
}

/// `(p + q sqrt d) / r` with `|p|, |q|, r <= 50` and non-square `d <= 200`.
pub fn any_surd() -> impl Strategy<Value = BigSurd> {
    surd_in(50, 200)
}

/// Non-noble inputs for `J`, with `|p|, |q|, r <= 15` and `d <= 80`: images
/// of larger inputs can have periods in the tens of thousands.
pub fn non_noble_surd() -> impl Strategy<Value = BigSurd> {
    surd_in(15, 80).prop_filter("noble", |x| !is_noble(x))
}

pub fn any_rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..=10_000, 1i64..=10_000).prop_map(|(n, d)| ratio(n, d))
}

pub fn any_word(max_len: usize) -> impl Strategy<Value = GeneratorWord> {
    prop::collection::vec(prop_oneof![Just(Letter::V), Just(Letter::U), Just(Letter::K)], 0..=max_len)
        .prop_map(GeneratorWord::new)
}

/// `a + b sqrt d` as rationals.
pub fn parts(x: &BigSurd) -> (BigRational, BigRational, BigInt) {
    let r = x.r().clone();
    (
        BigRational::new(x.p().clone(), r.clone()).unwrap(),
        BigRational::new(x.q().clone(), r).unwrap(),
        x.d().clone(),
    )
}

/// Elements of PGL(2, Z) as products of up to 16 generators.
pub fn any_mobius() -> impl Strategy<Value = BigMobius> {
    any_word(16).prop_map(|w| w.to_matrix())
}

/// `a + b sqrt d` with `b = 0` for rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl Quad {
    pub fn of(x: &BigReal) -> Quad {
        match x {
            Real::Rational(q) => Quad { a: q.clone(), b: BigRational::zero(), d: BigInt::one() },
            Real::Surd(s) => {
                let (a, b, d) = parts(s);
                Quad { a, b, d }
            }
        }
    }

    /// `self + other == c`, false when the radicals differ.
    pub fn sum_is(&self, other: &Quad, c: i64) -> bool {
        let same = self.d == other.d || self.b.is_zero() || other.b.is_zero();
        same && self.b.clone() + other.b.clone() == BigRational::zero()
            && self.a.clone() + other.a.clone() == BigRational::from_i64(c)
    }

    /// `self * other == c`. With distinct radicals the `sqrt(d1 d2)` term survives.
    pub fn product_is(&self, other: &Quad, c: i64) -> bool {
        if self.b.is_zero() || other.b.is_zero() || self.d == other.d {
            let d = if self.b.is_zero() { other.d.clone() } else { self.d.clone() };
            let rad = self.a.clone() * other.b.clone() + other.a.clone() * self.b.clone();
            let rat = self.a.clone() * other.a.clone()
                + self.b.clone() * other.b.clone() * BigRational::from_integer(d);
            rad.is_zero() && rat == BigRational::from_i64(c)
        } else {
            false
        }
    }

    pub fn recip(&self) -> Quad {
        // (a - b sqrt d) / (a^2 - b^2 d)
        let n = self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * BigRational::from_integer(self.d.clone());
        Quad { a: self.a.clone() / n.clone(), b: -(self.b.clone() / n), d: self.d.clone() }
    }
}
