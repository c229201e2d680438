use serde::{Deserialize, Serialize};

use crate::cf::{cf_of_rational, cf_of_surd, ContinuedFraction, Terms};
use crate::codec::bits::{boundary_representatives, decode_bits, encode_bits, BitStream, Bits, LazyBit, PeriodicBits};
use crate::codec::runlength::jimm_runlength;
use crate::error::Result;
use crate::int::Int;
use crate::mobius::MobiusMap;
use crate::rational::Rational;
use crate::real::Real;
use crate::surd::QuadraticSurd;

/// Bits read from a lazy image before giving up on a constant tail.
pub const DEFAULT_MAX_BITS: usize = 1 << 16;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", bound = "T: Int")]
pub enum JimmResult<T> {
    Surd { value: QuadraticSurd<T> },
    Rational { value: Rational<T> },
    /// The one-sided limits at a rational input, left limit first.
    NoblePairFromRational { lower: Real<T>, upper: Real<T> },
    #[serde(rename = "StreamCF")]
    StreamCf { cf: ContinuedFraction<T> },
}

impl<T: Int> PartialEq for JimmResult<T> {
    fn eq(&self, other: &Self) -> bool {
        use JimmResult::*;
        match (self, other) {
            (Surd { value: a }, Surd { value: b }) => a == b,
            (Rational { value: a }, Rational { value: b }) => a == b,
            (NoblePairFromRational { lower: a, upper: b }, NoblePairFromRational { lower: c, upper: d }) => {
                a == c && b == d
            }
            (StreamCf { cf: a }, StreamCf { cf: b }) => a == b,
            _ => false,
        }
    }
}

impl<T: Int> JimmResult<T> {
    fn from_real(x: Real<T>) -> Self {
        match x {
            Real::Rational(value) => JimmResult::Rational { value },
            Real::Surd(value) => JimmResult::Surd { value },
        }
    }

    /// The single exact value, if there is one.
    pub fn value(&self) -> Option<Real<T>> {
        match self {
            JimmResult::Surd { value } => Some(Real::Surd(value.clone())),
            JimmResult::Rational { value } => Some(Real::Rational(value.clone())),
            _ => None,
        }
    }
}

/// `(01)^w`, or `(10)^w` after an `S`.
fn mask(s_prefix: bool) -> PeriodicBits {
    PeriodicBits::new(Vec::new(), vec![s_prefix, !s_prefix]).expect("nonempty")
}

/// XOR with `(01)^w`, or with `(10)^w` for `S`-prefixed strings; the prefix
/// flag is kept. Bit `i` of the output depends only on bit `i` of the input.
pub fn jimm_bits(b: &BitStream) -> BitStream {
    match &b.bits {
        Bits::Periodic(p) => BitStream::periodic(b.s_prefix, p.xor(&mask(b.s_prefix))),
        Bits::Lazy(l) => {
            let flip_odd = !b.s_prefix;
            let mut tail: Option<bool> = None;
            let mut src = l.reader();
            let mut i = 0usize;
            let it = std::iter::from_fn(move || {
                let m = (i % 2 == 1) == flip_odd;
                i += 1;
                if let Some(c) = tail {
                    return Some(Ok(LazyBit::Bit(c ^ m)));
                }
                Some(match src.next()? {
                    Ok(LazyBit::Bit(x)) => Ok(LazyBit::Bit(x ^ m)),
                    Ok(LazyBit::ConstantTail(c)) => {
                        tail = Some(c);
                        Ok(LazyBit::Bit(c ^ m))
                    }
                    Err(e) => Err(e),
                })
            });
            BitStream::lazy(b.s_prefix, it)
        }
    }
}

/// `J` of a quadratic irrational through the bit domain. A noble input
/// gives the rational it is sent to.
pub fn jimm_surd<T: Int>(x: &QuadraticSurd<T>) -> JimmResult<T> {
    let cf = cf_of_surd(x, usize::MAX).expect("quadratic irrationals are eventually periodic");
    let bits = encode_bits(&cf).expect("periodic terms of a surd fit in memory");
    let out: ContinuedFraction<T> = decode_bits(&jimm_bits(&bits), 0).expect("periodic decode is exact");
    JimmResult::from_real(out.value().expect("periodic or finite image"))
}

/// The two one-sided limits of `J` at a rational, `J(q)-` first.
pub fn jimm_rational_twovalued<T: Int>(q: &Rational<T>) -> JimmResult<T> {
    let cf = cf_of_rational(q);
    let (left, right) = boundary_representatives(&cf).expect("finite expansion");
    let limit = |b: &BitStream| -> Real<T> {
        let out: ContinuedFraction<T> = decode_bits(&jimm_bits(b), 0).expect("periodic decode is exact");
        out.value().expect("periodic image")
    };
    JimmResult::NoblePairFromRational { lower: limit(&left), upper: limit(&right) }
}

/// Single-valued `J` on the rationals: `J(1) = 1`, `J(0) = inf`,
/// `J(inf) = 0`, `J(q) = 1 + 1/J(q-1)` for `q > 1`, `J(q) = 1/J(1/q)` on
/// `(0, 1)` and `J(q) = -1/J(-q)` for `q < 0`.
pub fn jimm_q<T: Int>(q: &Rational<T>) -> Rational<T> {
    if q.is_infinite() {
        return Rational::zero();
    }
    if q.is_zero() {
        return Rational::infinity();
    }
    let x = if q.is_negative() { -q.clone() } else { q.clone() };
    // J([n0; n1, ..., nk]) = T~^n0 U T~^n1 U ... U T~^(nk - 1) J(1), applied
    // right to left to the vector of J(1) = 1/1.
    let Terms::Finite(terms) = cf_of_rational(&x).terms else { unreachable!("rationals expand finitely") };
    let (last, init) = terms.split_last().expect("positive rationals have a term");
    let mut v = (T::one(), T::one());
    t_tilde_pow(&mut v, &(last.clone() - T::one()));
    for n in init.iter().rev() {
        std::mem::swap(&mut v.0, &mut v.1);
        t_tilde_pow(&mut v, n);
    }
    let (num, den) = if q.is_negative() { (-v.1, v.0) } else { v };
    Rational::new(num, den).expect("J of a rational is a rational")
}

/// `v <- T~^n v` with `T~ = [[1, 1], [1, 0]]`.
fn t_tilde_pow<T: Int>(v: &mut (T, T), n: &T) {
    match n.to_u8() {
        Some(k) if k <= 64 => {
            for _ in 0..k {
                let a = v.0.clone() + v.1.clone();
                v.1 = std::mem::replace(&mut v.0, a);
            }
        }
        _ => {
            let m = MobiusMap::<T>::t_tilde().pow_int(n);
            let (a, b, c, d) = m.entries();
            *v = (a.clone() * v.0.clone() + b.clone() * v.1.clone(), c.clone() * v.0.clone() + d.clone() * v.1.clone());
        }
    }
}

pub fn is_noble<T: Int>(x: &QuadraticSurd<T>) -> bool {
    match cf_of_surd(x, usize::MAX).map(|cf| cf.terms) {
        Ok(Terms::Periodic { period, .. }) => period.len() == 1 && period[0].is_one(),
        _ => false,
    }
}

/// `J` of any exact real: rationals give their pair of limits.
pub fn jimm_real<T: Int>(x: &Real<T>) -> JimmResult<T> {
    match x {
        Real::Rational(q) => jimm_rational_twovalued(q),
        Real::Surd(s) => jimm_surd(s),
    }
}

/// `J` of an expansion given as terms. Streams are rewritten lazily.
pub fn jimm_cf<T: Int>(cf: &ContinuedFraction<T>) -> Result<JimmResult<T>> {
    Ok(match &cf.terms {
        Terms::Stream(_) => JimmResult::StreamCf { cf: jimm_runlength(cf) },
        _ => jimm_real(&cf.value()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational<i64>;
    type S = QuadraticSurd<i64>;

    fn s(p: i64, q: i64, d: i64, r: i64) -> S {
        S::new(p, q, d, r).unwrap()
    }

    fn surd_of(x: &S) -> S {
        match jimm_surd(x) {
            JimmResult::Surd { value } => value,
            other => panic!("expected a surd, got {other:?}"),
        }
    }

    #[test]
    fn reference_values() {
        assert_eq!(surd_of(&s(0, 1, 2, 1)), s(1, 1, 2, 1));
        assert_eq!(surd_of(&s(3, 5, 2, 7)), s(-3, 2, 95, 7));
        assert_eq!(surd_of(&s(0, 1, 11, 1)), s(15, 1, 901, 26));
        assert_eq!(surd_of(&s(0, -1, 11, 1)), s(15, -1, 901, 26));
    }

    #[test]
    fn nobles_go_to_rationals() {
        let phi = s(1, 1, 5, 2);
        assert_eq!(jimm_surd(&phi), JimmResult::Rational { value: Q::infinity() });
        let one_plus_phi = s(3, 1, 5, 2);
        assert_eq!(jimm_surd(&one_plus_phi), JimmResult::Rational { value: Q::one() });
        let three_plus_phi = s(7, 1, 5, 2);
        assert_eq!(jimm_surd(&three_plus_phi), JimmResult::Rational { value: Q::new(3, 2).unwrap() });
        assert!(is_noble(&phi) && is_noble(&one_plus_phi));
        assert!(!is_noble(&s(0, 1, 2, 1)));
    }

    #[test]
    fn two_valued_limits() {
        let pair = |q: Q| match jimm_rational_twovalued(&q) {
            JimmResult::NoblePairFromRational { lower, upper } => (lower, upper),
            other => panic!("{other:?}"),
        };
        let phi = s(1, 1, 5, 2);
        let (lo, hi) = pair(Q::one());
        assert_eq!((lo, hi), (Real::Surd(s(3, -1, 5, 2)), Real::Surd(s(3, 1, 5, 2))));
        let (lo, hi) = pair(Q::infinity());
        assert_eq!((lo, hi), (Real::Surd(phi.clone()), Real::Surd(s(1, -1, 5, 2))));
        let (lo, hi) = pair(Q::zero());
        assert_eq!((lo, hi), (Real::Surd(phi.neg()), Real::Surd(phi.recip())));
    }

    #[test]
    fn rational_involution_values() {
        assert_eq!(jimm_q(&Q::one()), Q::one());
        assert_eq!(jimm_q(&Q::from_i64(2)), Q::from_i64(2));
        assert_eq!(jimm_q(&Q::from_i64(3)), Q::new(3, 2).unwrap());
        assert_eq!(jimm_q(&Q::new(3, 2).unwrap()), Q::from_i64(3));
        assert_eq!(jimm_q(&Q::zero()), Q::infinity());
        assert_eq!(jimm_q(&Q::infinity()), Q::zero());
        assert_eq!(jimm_q(&Q::new(-1, 2).unwrap()), Q::from_i64(-2));
        assert_eq!(jimm_q(&Q::from_i64(-3)), Q::new(-2, 3).unwrap());
        for n in -30..30 {
            for d in 1..30 {
                let q = Q::new(n, d).unwrap();
                assert_eq!(jimm_q(&jimm_q(&q)), q);
            }
        }
    }

    #[test]
    fn lazy_xor_matches_periodic() {
        let cf = ContinuedFraction::<i64>::periodic(false, vec![3], vec![3, 6]).unwrap();
        let stream = ContinuedFraction::stream(false, cf.iter());
        let a = jimm_bits(&encode_bits(&cf).unwrap()).prefix(200).unwrap();
        let b = jimm_bits(&encode_bits(&stream).unwrap()).prefix(200).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_kind_tag() {
        let r = jimm_surd(&s(0, 1, 2, 1));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"kind":"Surd","value":{"p":"1""#), "{json}");
        assert_eq!(serde_json::from_str::<JimmResult<i64>>(&json).unwrap(), r);
        let pair = jimm_rational_twovalued(&Q::one());
        let json = serde_json::to_string(&pair).unwrap();
        assert_eq!(serde_json::from_str::<JimmResult<i64>>(&json).unwrap(), pair);
    }
}
