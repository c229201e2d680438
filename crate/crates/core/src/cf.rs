//! Regular continued fractions with the S-prefix sign convention.
//!
//! A value is `[n0; n1, n2, ...]` with `n0 >= 0` and `ni >= 1`, or, when
//! `s_prefix` is set, `-1 / [n0; n1, ...]`. The empty expansion is infinity.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::int::{int, isqrt, Int};
use crate::mobius::MobiusMap;
use crate::rational::Rational;
use crate::real::Real;
use crate::surd::QuadraticSurd;

/// Number of terms written out when a stream is serialized.
pub const STREAM_JSON_TERMS: usize = 32;

/// A lazily produced, possibly infinite, sequence of partial quotients.
pub trait TermSource<T>: Iterator<Item = Result<T>> + Send + Sync {
    fn clone_box(&self) -> Box<dyn TermSource<T>>;
}

impl<T, I> TermSource<T> for I
where
    I: Iterator<Item = Result<T>> + Clone + Send + Sync + 'static,
{
    fn clone_box(&self) -> Box<dyn TermSource<T>> {
        Box::new(self.clone())
    }
}

impl<T> Clone for Box<dyn TermSource<T>> {
    fn clone(&self) -> Self {
        (**self).clone_box()
    }
}

/// Stream terms. Each reader works on its own copy of the generator, so a
/// stream is never advanced in place.
pub struct TermStream<T> {
    source: Box<dyn TermSource<T>>,
}

impl<T> TermStream<T> {
    pub fn new(source: impl TermSource<T> + 'static) -> Self {
        TermStream { source: Box::new(source) }
    }

    pub fn from_boxed(source: Box<dyn TermSource<T>>) -> Self {
        TermStream { source }
    }

    pub fn reader(&self) -> Box<dyn TermSource<T>> {
        self.source.clone()
    }
}

impl<T> Clone for TermStream<T> {
    fn clone(&self) -> Self {
        TermStream { source: self.source.clone() }
    }
}

impl<T> fmt::Debug for TermStream<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TermStream(..)")
    }
}

#[derive(Clone, Debug)]
pub enum Terms<T> {
    Finite(Vec<T>),
    Periodic { preperiod: Vec<T>, period: Vec<T> },
    Stream(TermStream<T>),
}

#[derive(Clone, Debug)]
pub struct ContinuedFraction<T> {
    pub s_prefix: bool,
    pub terms: Terms<T>,
}

/// Structural equality; streams compare unequal to everything.
impl<T: Int> PartialEq for ContinuedFraction<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.s_prefix != other.s_prefix {
            return false;
        }
        match (&self.terms, &other.terms) {
            (Terms::Finite(a), Terms::Finite(b)) => a == b,
            (
                Terms::Periodic { preperiod: a, period: p },
                Terms::Periodic { preperiod: b, period: q },
            ) => a == b && p == q,
            _ => false,
        }
    }
}

fn check_terms<T: Int>(terms: &[T], first_index: usize) -> Result<()> {
    for (i, t) in terms.iter().enumerate() {
        let min = if i + first_index == 0 { T::zero() } else { T::one() };
        if *t < min {
            return Err(Error::invalid(format!(
                "partial quotient {t} at index {} is below {min}",
                i + first_index
            )));
        }
    }
    Ok(())
}

/// Smallest `p` dividing `len` such that `period` is `p`-periodic.
fn primitive_len<T: PartialEq>(period: &[T]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| period[i] == period[i - p]))
        .unwrap_or(n)
}

impl<T: Int> ContinuedFraction<T> {
    /// Validates and folds a trailing `1` into its predecessor.
    pub fn finite(s_prefix: bool, mut terms: Vec<T>) -> Result<Self> {
        check_terms(&terms, 0)?;
        if terms.len() >= 2 && terms.last().is_some_and(|t| t.is_one()) {
            terms.pop();
            let last = terms.last_mut().expect("len >= 1");
            *last = last.clone() + T::one();
        }
        Ok(ContinuedFraction { s_prefix, terms: Terms::Finite(terms) })
    }

    /// Validates, reduces the period to a primitive word and shortens the
    /// preperiod as far as possible.
    pub fn periodic(s_prefix: bool, mut preperiod: Vec<T>, mut period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::invalid("empty period"));
        }
        check_terms(&preperiod, 0)?;
        check_terms(&period, 1)?;
        period.truncate(primitive_len(&period));
        // Each term of the preperiod matching the period's last term rolls
        // the period back by one.
        let n = period.len();
        let m = preperiod.len();
        let k = (0..m).take_while(|&j| preperiod[m - 1 - j] == period[n - 1 - j % n]).count();
        preperiod.truncate(m - k);
        period.rotate_right(k % n);
        Ok(ContinuedFraction { s_prefix, terms: Terms::Periodic { preperiod, period } })
    }

    pub fn stream(s_prefix: bool, source: impl TermSource<T> + 'static) -> Self {
        ContinuedFraction { s_prefix, terms: Terms::Stream(TermStream::new(source)) }
    }

    pub fn infinity() -> Self {
        ContinuedFraction { s_prefix: false, terms: Terms::Finite(Vec::new()) }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.terms, Terms::Finite(_))
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.terms, Terms::Periodic { .. })
    }

    pub fn is_stream(&self) -> bool {
        matches!(self.terms, Terms::Stream(_))
    }

    /// Iterates over the terms. Periodic expansions never end.
    pub fn iter(&self) -> Box<dyn TermSource<T>> {
        match &self.terms {
            Terms::Finite(v) => Box::new(v.clone().into_iter().map(Ok)),
            Terms::Periodic { preperiod, period } => Box::new(
                preperiod.clone().into_iter().chain(period.clone().into_iter().cycle()).map(Ok),
            ),
            Terms::Stream(s) => s.reader(),
        }
    }

    /// Up to `n` terms; fewer only when the expansion is finite.
    pub fn prefix(&self, n: usize) -> Result<Vec<T>> {
        self.iter().take(n).collect()
    }

    /// Exact value of a finite or periodic expansion.
    pub fn value(&self) -> Result<Real<T>> {
        let v = match &self.terms {
            Terms::Finite(terms) => Real::Rational(finite_value(terms)),
            Terms::Periodic { .. } => Real::Surd(surd_of_periodic_cf(self)?),
            Terms::Stream(_) => {
                return Err(Error::invalid("a stream has no exact value; use convergents"))
            }
        };
        // The periodic branch already applied the prefix.
        Ok(match (&self.terms, self.s_prefix) {
            (Terms::Finite(_), true) => v.neg_recip(),
            _ => v,
        })
    }

    /// Same value with the terms of `1/x`: drops a leading 0 or prepends one.
    pub fn reciprocal_terms(&self) -> Self {
        fn flip<T: Int>(mut v: Vec<T>) -> Vec<T> {
            if v.first().is_some_and(|t| t.is_zero()) {
                v.remove(0);
            } else {
                v.insert(0, T::zero());
            }
            v
        }
        let terms = match &self.terms {
            Terms::Finite(v) => {
                return Self::finite(self.s_prefix, flip(v.clone())).expect("still valid")
            }
            Terms::Periodic { preperiod, period } => {
                if preperiod.is_empty() {
                    Terms::Periodic { preperiod: vec![T::zero()], period: period.clone() }
                } else {
                    Terms::Periodic { preperiod: flip(preperiod.clone()), period: period.clone() }
                }
            }
            Terms::Stream(s) => {
                let mut src = s.reader();
                let head = src.next();
                let rest = TermStream::from_boxed(src);
                let out: Box<dyn TermSource<T>> = match head {
                    None => Box::new(std::iter::once(Ok(T::zero()))),
                    Some(Ok(t)) if t.is_zero() => Box::new(ReaderIter(rest)),
                    // Whether a 0 leads is not known yet.
                    Some(Err(e)) => Box::new(std::iter::once(Err(e)).chain(ReaderIter(rest))),
                    Some(h) => Box::new(
                        [Ok(T::zero()), h].into_iter().chain(ReaderIter(rest)),
                    ),
                };
                Terms::Stream(TermStream::from_boxed(out))
            }
        };
        ContinuedFraction { s_prefix: self.s_prefix, terms }
    }
}

/// Owns a stream and yields from it; cloning forks the generator.
#[derive(Clone)]
pub(crate) struct ReaderIter<T>(pub(crate) TermStream<T>);

impl<T> Iterator for ReaderIter<T> {
    type Item = Result<T>;
    fn next(&mut self) -> Option<Result<T>> {
        self.0.source.next()
    }
}

/// `[n0, ..., nk]` evaluated projectively; the empty list is infinity.
fn finite_value<T: Int>(terms: &[T]) -> Rational<T> {
    let (mut h, mut h1) = (T::one(), T::zero());
    let (mut k, mut k1) = (T::zero(), T::one());
    for a in terms {
        let nh = a.clone() * h.clone() + h1;
        let nk = a.clone() * k.clone() + k1;
        h1 = h;
        k1 = k;
        h = nh;
        k = nk;
    }
    Rational::new(h, k).expect("convergent denominators never vanish together")
}

/// Product of `[[a,1],[1,0]]` over the word, as raw entries.
fn word_matrix<T: Int>(terms: &[T]) -> (T, T, T, T) {
    let (mut a, mut b, mut c, mut d) = (T::one(), T::zero(), T::zero(), T::one());
    for t in terms {
        let (na, nc) = (a.clone() * t.clone() + b.clone(), c.clone() * t.clone() + d.clone());
        b = a;
        d = c;
        a = na;
        c = nc;
    }
    (a, b, c, d)
}

pub fn cf_of_rational<T: Int>(x: &Rational<T>) -> ContinuedFraction<T> {
    if x.is_infinite() {
        return ContinuedFraction::infinity();
    }
    let (s_prefix, y) = if x.is_negative() { (true, -x.recip()) } else { (false, x.clone()) };
    let (mut n, mut d) = y.into_parts();
    let mut terms = Vec::new();
    while !d.is_zero() {
        let (q, r) = n.div_mod_floor(&d);
        terms.push(q);
        n = d;
        d = r;
    }
    ContinuedFraction::finite(s_prefix, terms).expect("Euclid produces valid terms")
}

pub fn cf_of_surd<T: Int>(x: &QuadraticSurd<T>, max_terms: usize) -> Result<ContinuedFraction<T>> {
    let (s_prefix, y) = if x.is_negative() { (true, x.recip().neg()) } else { (false, x.clone()) };
    let (p, q, d, r) = (y.p().clone(), y.q().clone(), y.d().clone(), y.r().clone());
    // y = (P + sqrt D) / Q with Q | D - P^2.
    let big_d = q.clone() * q.clone() * d * r.clone() * r.clone();
    let (mut pp, mut qq) = if q.is_positive() {
        (p * r.clone(), r.clone() * r)
    } else {
        (-(p * r.clone()), -(r.clone() * r))
    };
    let s = isqrt(&big_d);
    // Q_{k-1} Q_k = D - P_k^2 lets each step avoid a long division.
    let mut q_prev = (big_d.clone() - pp.clone() * pp.clone()) / qq.clone();
    // Once a complete quotient is reduced the expansion is purely periodic
    // from there, so only that state needs remembering.
    let mut reduced: Option<(T, T, usize)> = None;
    let mut terms: Vec<T> = Vec::new();
    while terms.len() <= max_terms {
        match &reduced {
            Some((p0, q0, j)) if *p0 == pp && *q0 == qq => {
                let period = terms.split_off(*j);
                return ContinuedFraction::periodic(s_prefix, terms, period);
            }
            None if qq.is_positive() && pp <= s && s.clone() - pp.clone() < qq && qq <= pp.clone() + s.clone() => {
                reduced = Some((pp.clone(), qq.clone(), terms.len()));
            }
            _ => {}
        }
        let a = if qq.is_positive() {
            (pp.clone() + s.clone()).div_floor(&qq)
        } else {
            -((pp.clone() + s.clone()).div_floor(&(-qq.clone())) + T::one())
        };
        let np = a.clone() * qq.clone() - pp.clone();
        let nq = q_prev + a.clone() * (pp - np.clone());
        terms.push(a);
        q_prev = qq;
        pp = np;
        qq = nq;
    }
    Err(Error::PeriodNotFound { max_terms })
}

/// Reconstructs the surd of a periodic expansion from the attracting fixed
/// point of its period word.
pub fn surd_of_periodic_cf<T: Int>(cf: &ContinuedFraction<T>) -> Result<QuadraticSurd<T>> {
    let Terms::Periodic { preperiod, period } = &cf.terms else {
        return Err(Error::invalid("expected a periodic continued fraction"));
    };
    let (al, be, ga, de) = word_matrix(period);
    let det = al.clone() * de.clone() - be.clone() * ga.clone();
    let tr = al.clone() + de.clone();
    let disc = tr.clone() * tr.clone() - int::<T>(4) * det.clone();
    if ga.is_zero() || !disc.is_positive() || crate::int::exact_sqrt(&disc).is_some() {
        return Err(Error::NotHyperbolic { trace: tr.to_string(), det: det.to_string() });
    }
    // Positive root of ga y^2 + (de - al) y - be = 0.
    let tail = QuadraticSurd::new(al - de, T::one(), disc, int::<T>(2) * ga)?;
    let (a, b, c, d) = word_matrix(preperiod);
    let mut x = MobiusMap::new(a, b, c, d)?.apply_surd(&tail);
    if cf.s_prefix {
        x = MobiusMap::s().apply_surd(&x);
    }
    Ok(x)
}

/// Continued fraction of a rational or surd.
pub fn cf_of_real<T: Int>(x: &Real<T>, max_terms: usize) -> Result<ContinuedFraction<T>> {
    match x {
        Real::Rational(r) => Ok(cf_of_rational(r)),
        Real::Surd(s) => cf_of_surd(s, max_terms),
    }
}

/// The first `k` convergents `p_i/q_i`. With an S-prefix they are mapped by
/// `x -> -1/x` so they approximate the value itself.
///
/// For `i + 1` terms available, `|x - p_i/q_i| <= 1/(q_i q_{i+1})`.
pub fn convergents<T: Int>(cf: &ContinuedFraction<T>, k: usize) -> Result<Vec<Rational<T>>> {
    let terms = cf.prefix(k)?;
    if terms.len() < k {
        return Err(Error::InsufficientTerms { available: terms.len(), required: k });
    }
    let (mut h, mut h1) = (T::one(), T::zero());
    let (mut q, mut q1) = (T::zero(), T::one());
    let mut out = Vec::with_capacity(k);
    for a in terms {
        let nh = a.clone() * h.clone() + h1;
        let nq = a * q.clone() + q1;
        h1 = h;
        q1 = q;
        h = nh;
        q = nq;
        let c = Rational::new(h.clone(), q.clone()).expect("coprime convergent");
        out.push(if cf.s_prefix { MobiusMap::s().apply_rational(&c) } else { c });
    }
    Ok(out)
}

pub fn galois_conjugate<T: Int>(x: &QuadraticSurd<T>) -> QuadraticSurd<T> {
    x.conjugate()
}

pub fn mobius_apply<T: Int>(m: &MobiusMap<T>, x: &Real<T>) -> Real<T> {
    x.apply(m)
}

fn write_terms<T: fmt::Display>(f: &mut fmt::Formatter<'_>, terms: &[T], first: bool) -> fmt::Result {
    for (i, t) in terms.iter().enumerate() {
        if i == 0 && first {
            write!(f, "{t}")?;
            if terms.len() > 1 {
                write!(f, ";")?;
            }
        } else if i == 0 || (i == 1 && first) {
            write!(f, "{}{t}", if i == 0 { "" } else { " " })?;
        } else {
            write!(f, ", {t}")?;
        }
    }
    Ok(())
}

/// `[3; 7, 16]`, `[1; (2)]` for a repeating block, `S[0; 2]` with a prefix,
/// `[3; 7, 15, ...]` for the head of a stream.
impl<T: Int> fmt::Display for ContinuedFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s_prefix {
            write!(f, "S")?;
        }
        write!(f, "[")?;
        match &self.terms {
            Terms::Finite(v) => write_terms(f, v, true)?,
            Terms::Periodic { preperiod, period } => {
                write_terms(f, preperiod, true)?;
                match preperiod.len() {
                    0 => write!(f, "(")?,
                    1 => write!(f, "; (")?,
                    _ => write!(f, ", (")?,
                }
                write_terms(f, period, false)?;
                write!(f, ")")?;
            }
            Terms::Stream(s) => {
                let head: Vec<String> = ReaderIter(s.clone())
                    .take(20)
                    .map_while(|t| t.ok())
                    .map(|t| t.to_string())
                    .collect();
                write_terms(f, &head, true)?;
                if head.len() == 20 {
                    write!(f, ", ...")?;
                }
            }
        }
        write!(f, "]")
    }
}

impl<T: Int> Serialize for ContinuedFraction<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase", bound = "T: Int")]
        enum Out<'a, T> {
            Finite(#[serde(with = "crate::serde_int::vec")] &'a [T]),
            Periodic {
                #[serde(with = "crate::serde_int::vec")]
                preperiod: &'a [T],
                #[serde(with = "crate::serde_int::vec")]
                period: &'a [T],
            },
            Stream {
                #[serde(with = "crate::serde_int::vec")]
                prefix: &'a [T],
            },
        }
        let head;
        let terms = match &self.terms {
            Terms::Finite(v) => Out::Finite(v),
            Terms::Periodic { preperiod, period } => Out::Periodic { preperiod, period },
            Terms::Stream(st) => {
                head = ReaderIter(st.clone())
                    .take(STREAM_JSON_TERMS)
                    .map_while(|t| t.ok())
                    .collect::<Vec<T>>();
                Out::Stream { prefix: &head }
            }
        };
        let mut out = s.serialize_struct("ContinuedFraction", 2)?;
        out.serialize_field("sPrefix", &self.s_prefix)?;
        out.serialize_field("terms", &terms)?;
        out.end()
    }
}

/// A serialized stream comes back as a stream over its written prefix.
impl<'de, T: Int> Deserialize<'de> for ContinuedFraction<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(rename_all = "camelCase", bound = "T: Int")]
        enum In<T> {
            Finite(#[serde(with = "crate::serde_int::vec")] Vec<T>),
            Periodic {
                #[serde(with = "crate::serde_int::vec")]
                preperiod: Vec<T>,
                #[serde(with = "crate::serde_int::vec")]
                period: Vec<T>,
            },
            Stream {
                #[serde(with = "crate::serde_int::vec")]
                prefix: Vec<T>,
            },
        }
        #[derive(Deserialize)]
        #[serde(rename_all = "camelCase", bound = "T: Int")]
        struct Raw<T> {
            s_prefix: bool,
            terms: In<T>,
        }
        let raw = Raw::<T>::deserialize(d)?;
        let cf = match raw.terms {
            In::Finite(v) => ContinuedFraction::finite(raw.s_prefix, v),
            In::Periodic { preperiod, period } => {
                ContinuedFraction::periodic(raw.s_prefix, preperiod, period)
            }
            In::Stream { prefix } => check_terms(&prefix, 0)
                .map(|_| ContinuedFraction::stream(raw.s_prefix, prefix.into_iter().map(Ok))),
        };
        cf.map_err(serde::de::Error::custom)
    }
}
