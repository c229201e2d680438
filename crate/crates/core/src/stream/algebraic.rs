use std::fmt;
use std::str::FromStr;

use crate::cf::{cf_of_rational, ContinuedFraction};
use crate::error::{Error, Result};
use crate::int::{floor_div, parse_int, Int};
use crate::rational::Rational;

/// Integer polynomial, coefficients in ascending degree, content removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Int> IntPolynomial<T> {
    /// Trailing zero coefficients are dropped; the degree must be at least 1.
    pub fn new(mut coeffs: Vec<T>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::invalid("polynomial must have degree at least 1"));
        }
        Ok(IntPolynomial { coeffs: primitive(coeffs) })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Sign at a rational point; infinity gives the sign of the leading
    /// coefficient.
    pub fn sign_at(&self, x: &Rational<T>) -> i8 {
        sign_at(&self.coeffs, Some(x))
    }
}

fn primitive<T: Int>(coeffs: Vec<T>) -> Vec<T> {
    let g = coeffs.iter().fold(T::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        coeffs
    } else {
        coeffs.into_iter().map(|c| c / g.clone()).collect()
    }
}

fn sign_of<T: Int>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// `None` is `+infinity`.
fn sign_at<T: Int>(coeffs: &[T], x: Option<&Rational<T>>) -> i8 {
    let Some(x) = x.filter(|x| !x.is_infinite()) else {
        return sign_of(coeffs.last().expect("nonempty"));
    };
    let (n, d) = (x.numer(), x.denom());
    // Homogeneous Horner: sum c_i n^i d^(deg-i), with d > 0.
    let mut acc = coeffs.last().expect("nonempty").clone();
    let mut dp = T::one();
    for c in coeffs.iter().rev().skip(1) {
        dp = dp * d.clone();
        acc = acc * n.clone() + c.clone() * dp.clone();
    }
    sign_of(&acc)
}

/// Coefficients of `p(x + a)`.
fn taylor_shift<T: Int>(coeffs: &[T], a: &T) -> Vec<T> {
    let mut c = coeffs.to_vec();
    let n = c.len() - 1;
    for i in 0..n {
        for j in (i..n).rev() {
            c[j] = c[j].clone() + a.clone() * c[j + 1].clone();
        }
    }
    c
}

impl<T: Int> fmt::Display for IntPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `a0,a1,...,an`
impl<T: Int> FromStr for IntPolynomial<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s.split(',').map(parse_int).collect::<Result<Vec<T>>>()?;
        IntPolynomial::new(coeffs)
    }
}

/// An open interval `(lo, hi)` with finite rational ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBracket<T> {
    pub lo: Rational<T>,
    pub hi: Rational<T>,
}

impl<T: Int> RealBracket<T> {
    pub fn new(lo: Rational<T>, hi: Rational<T>) -> Result<Self> {
        if lo.is_infinite() || hi.is_infinite() || lo >= hi {
            return Err(Error::invalid(format!("bracket [{lo}, {hi}] is not a finite interval")));
        }
        Ok(RealBracket { lo, hi })
    }

    pub fn width(&self) -> Rational<T> {
        self.hi.clone() - self.lo.clone()
    }
}

/// Partial quotients of the root of `poly` in `(lo, hi)` for a positive
/// root, by the Lagrange shift-invert scheme. The signs of `poly` at the two
/// ends differ and neither is zero.
#[derive(Clone, Debug)]
pub struct AlgebraicTerms<T> {
    poly: Vec<T>,
    lo: Rational<T>,
    hi: Option<Rational<T>>,
    done: bool,
}

impl<T: Int> AlgebraicTerms<T> {
    fn sign(&self, x: &Rational<T>) -> i8 {
        sign_at(&self.poly, Some(x))
    }

    fn sign_int(&self, t: &T) -> i8 {
        self.sign(&Rational::from_integer(t.clone()))
    }

    fn exact(&mut self, t: T) -> Option<Result<T>> {
        self.done = true;
        Some(Ok(t))
    }
}

impl<T: Int> Iterator for AlgebraicTerms<T> {
    type Item = Result<T>;

    fn next(&mut self) -> Option<Result<T>> {
        if self.done {
            return None;
        }
        let sl = self.sign(&self.lo);
        let mut l = self.lo.clone();
        let mut r = self.hi.clone();
        // Narrow (l, r) to contain no integer, keeping the sign change.
        let first = self.lo.floor() + T::one();
        if r.as_ref().map_or(true, |r| Rational::from_integer(first.clone()) < *r) {
            if r.is_none() {
                let mut t = first.clone();
                let mut step = T::one();
                loop {
                    let s = self.sign_int(&t);
                    if s == 0 {
                        return self.exact(t);
                    }
                    if s != sl {
                        r = Some(Rational::from_integer(t));
                        break;
                    }
                    l = Rational::from_integer(t.clone());
                    t = t + step.clone();
                    step = step.clone() + step;
                }
            }
            let r_ref = r.as_mut().expect("finite after the search");
            loop {
                let lo_int = l.floor() + T::one();
                let hi_int = -(-r_ref.clone()).floor() - T::one();
                if lo_int > hi_int {
                    break;
                }
                let mid = floor_div(&(lo_int + hi_int), &T::from_i64(2).expect("2 fits"));
                let s = self.sign_int(&mid);
                if s == 0 {
                    return self.exact(mid);
                }
                if s == sl {
                    l = Rational::from_integer(mid);
                } else {
                    *r_ref = Rational::from_integer(mid);
                }
            }
        }
        let a = l.floor();
        let a_q = Rational::from_integer(a.clone());
        let r = r.expect("finite after the search");
        // y = 1 / (x - a) > 1 is a root of y^deg p(a + 1/y).
        let mut shifted = taylor_shift(&self.poly, &a);
        shifted.reverse();
        self.poly = primitive(shifted);
        self.lo = (r - a_q.clone()).recip();
        self.hi = if l == a_q { None } else { Some((l - a_q).recip()) };
        Some(Ok(a))
    }
}

/// Continued fraction of the unique root of `p` in the bracket.
///
/// The first `lookahead` terms are computed at once: if the expansion ends
/// among them the root is rational and a finite expansion is returned,
/// otherwise a stream. Negative roots use `x = -1/y` with an S-prefix.
/// `DegenerateRoot` is returned when `p` has no sign change on the bracket,
/// or changes sign on both sides of 0.
pub fn cf_of_algebraic<T: Int>(
    p: &IntPolynomial<T>,
    bracket: &RealBracket<T>,
    lookahead: usize,
) -> Result<ContinuedFraction<T>> {
    let (lo, hi) = (&bracket.lo, &bracket.hi);
    let (s_lo, s_hi) = (p.sign_at(lo), p.sign_at(hi));
    if s_lo == 0 {
        return Ok(cf_of_rational(lo));
    }
    if s_hi == 0 {
        return Ok(cf_of_rational(hi));
    }
    let zero = Rational::zero();
    let positive = if !lo.is_negative() {
        true
    } else if !hi.is_positive() {
        false
    } else {
        let s0 = p.sign_at(&zero);
        if s0 == 0 {
            return Ok(cf_of_rational(&zero));
        }
        match (s_lo != s0, s0 != s_hi) {
            (true, true) => return Err(Error::DegenerateRoot("roots on both sides of 0".into())),
            (false, false) => return Err(Error::DegenerateRoot(format!("{p} has no sign change on [{lo}, {hi}]"))),
            (left, _) => !left,
        }
    };
    if s_lo == s_hi {
        return Err(Error::DegenerateRoot(format!("{p} has no sign change on [{lo}, {hi}]")));
    }
    let terms = if positive {
        let lo = if lo.is_negative() { zero } else { lo.clone() };
        AlgebraicTerms { poly: p.coeffs.clone(), lo, hi: Some(hi.clone()), done: false }
    } else {
        // y = -1/x: y^deg p(-1/y), whose coefficients are those of p(-x) reversed.
        let mut poly: Vec<T> =
            p.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect();
        poly.reverse();
        let hi_y = if hi.is_negative() { Some(-hi.recip()) } else { None };
        AlgebraicTerms { poly: primitive(poly), lo: -lo.recip(), hi: hi_y, done: false }
    };
    let head = terms.clone().take(lookahead).collect::<Result<Vec<T>>>()?;
    if head.len() < lookahead {
        return ContinuedFraction::finite(!positive, head);
    }
    Ok(ContinuedFraction::stream(!positive, terms))
}
