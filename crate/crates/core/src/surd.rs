use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::int::{exact_sqrt, gcd3, int, isqrt, parse_int, squarefree_split, Int};
use crate::rational::Rational;

/// A real quadratic irrational `(p + q*sqrt(d)) / r`.
///
/// `d > 1` is squarefree, `q != 0`, `r > 0` and `gcd(p, q, r) = 1`, which
/// makes the tuple unique for each value. Equality is checked semantically
/// (cross-multiplied), so it stays exact even in the rare case where
/// [`squarefree_split`] cannot strip a repeated prime above its trial bound.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "T: Int"))]
pub struct QuadraticSurd<T> {
    #[serde(with = "crate::serde_int")]
    p: T,
    #[serde(with = "crate::serde_int")]
    q: T,
    #[serde(with = "crate::serde_int")]
    d: T,
    #[serde(with = "crate::serde_int")]
    r: T,
}

/// Sign of `p + q*sqrt(d)` for `q != 0` and non-square `d`.
fn sign_of<T: Int>(p: &T, q: &T, d: &T) -> Ordering {
    let zero = T::zero();
    match (p.cmp(&zero), q.cmp(&zero)) {
        (Ordering::Equal, s) => s,
        (a, b) if a == b => a,
        (pa, _) => {
            let lhs = p.clone() * p.clone();
            let rhs = q.clone() * q.clone() * d.clone();
            // p^2 > q^2 d means the rational part dominates.
            if lhs > rhs {
                pa
            } else {
                pa.reverse()
            }
        }
    }
}

impl<T: Int> QuadraticSurd<T> {
    /// Builds `(p + q*sqrt(disc)) / r` for any positive non-square `disc`.
    pub fn new(p: T, q: T, disc: T, r: T) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::invalid("surd coefficient q must be nonzero"));
        }
        if r.is_zero() {
            return Err(Error::invalid("surd denominator must be nonzero"));
        }
        if !disc.is_positive() {
            return Err(Error::invalid(format!("discriminant {disc} is not positive")));
        }
        if exact_sqrt(&disc).is_some() {
            return Err(Error::invalid(format!(
                "discriminant {disc} is a perfect square; the value is rational"
            )));
        }
        let (kernel, root) = squarefree_split(&disc);
        Ok(Self::with_kernel(p, q * root, kernel, r))
    }

    /// `d` must already be a squarefree kernel.
    pub(crate) fn with_kernel(p: T, q: T, d: T, r: T) -> Self {
        debug_assert!(!q.is_zero() && !r.is_zero());
        let g = gcd3(&p, &q, &r);
        let (mut p, mut q, mut r) = (p / g.clone(), q / g.clone(), r / g);
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        QuadraticSurd { p, q, d, r }
    }

    /// Root of `a x^2 + b x + c` taking `+sqrt` when `plus` (before any sign
    /// normalisation of `a`).
    pub fn from_quadratic(a: T, b: T, c: T, plus: bool) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::invalid("leading coefficient is zero"));
        }
        let disc = b.clone() * b.clone() - int::<T>(4) * a.clone() * c;
        let q = if plus { T::one() } else { -T::one() };
        Self::new(-b, q, disc, int::<T>(2) * a)
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn d(&self) -> &T {
        &self.d
    }

    pub fn r(&self) -> &T {
        &self.r
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd { q: -self.q.clone(), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd { p: -self.p.clone(), q: -self.q.clone(), ..self.clone() }
    }

    pub fn recip(&self) -> Self {
        let den = self.p.clone() * self.p.clone() - self.q.clone() * self.q.clone() * self.d.clone();
        Self::with_kernel(
            self.r.clone() * self.p.clone(),
            -(self.r.clone() * self.q.clone()),
            self.d.clone(),
            den,
        )
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.p, &self.q, &self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// `floor(q*sqrt(d))`, using that `q^2 d` is never a square.
    fn floor_irrational_part(&self) -> T {
        let s = isqrt(&(self.q.clone() * self.q.clone() * self.d.clone()));
        if self.q.is_positive() {
            s
        } else {
            -(s + T::one())
        }
    }

    pub fn floor(&self) -> T {
        (self.p.clone() + self.floor_irrational_part()).div_floor(&self.r)
    }

    /// Compares the surd against a rational; infinity is above everything.
    pub fn cmp_rational(&self, x: &Rational<T>) -> Ordering {
        if x.is_infinite() {
            return Ordering::Less;
        }
        // sign of (p + q sqrt d)/r - n/m = sign of (p m - n r) + q m sqrt d
        let m = x.denom().clone();
        let n = x.numer().clone();
        let a = self.p.clone() * m.clone() - n * self.r.clone();
        sign_of(&a, &(self.q.clone() * m), &self.d)
    }

    /// `x + x*` as a rational.
    pub fn trace(&self) -> Rational<T> {
        Rational::new(int::<T>(2) * self.p.clone(), self.r.clone()).expect("r > 0")
    }

    /// `x * x*` as a rational.
    pub fn norm(&self) -> Rational<T> {
        let num = self.p.clone() * self.p.clone() - self.q.clone() * self.q.clone() * self.d.clone();
        Rational::new(num, self.r.clone() * self.r.clone()).expect("r > 0")
    }

    /// Primitive integer polynomial `(a, b, c)` with `a > 0` vanishing at the
    /// surd: `a x^2 + b x + c`.
    pub fn minimal_polynomial(&self) -> (T, T, T) {
        // r^2 x^2 - 2 p r x + (p^2 - q^2 d) = 0
        let a = self.r.clone() * self.r.clone();
        let b = -(int::<T>(2) * self.p.clone() * self.r.clone());
        let c = self.p.clone() * self.p.clone() - self.q.clone() * self.q.clone() * self.d.clone();
        let g = gcd3(&a, &b, &c);
        (a / g.clone(), b / g.clone(), c / g)
    }

    /// Discriminant `b^2 - 4ac` of the minimal polynomial.
    pub fn discriminant(&self) -> T {
        let (a, b, c) = self.minimal_polynomial();
        b.clone() * b - int::<T>(4) * a * c
    }
}

impl<T: Int> PartialEq for QuadraticSurd<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.q.is_positive() != other.q.is_positive() {
            return false;
        }
        if self.p.clone() * other.r.clone() != other.p.clone() * self.r.clone() {
            return false;
        }
        let lhs = self.q.clone() * self.q.clone() * self.d.clone() * other.r.clone() * other.r.clone();
        let rhs = other.q.clone() * other.q.clone() * other.d.clone() * self.r.clone() * self.r.clone();
        lhs == rhs
    }
}

impl<T: Int> Eq for QuadraticSurd<T> {}

impl<T: Int> fmt::Display for QuadraticSurd<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", self.p, sign, self.q.abs(), self.d, self.r)
    }
}

/// Parses `(P+Q*sqrt(D))/R` and its abbreviations: `sqrt(2)`, `-sqrt(11)`,
/// `1+sqrt(5)/2` (read as `(1+sqrt(5))/2`), `(15-sqrt(901))/26`, `3*sqrt(7)`.
/// `√D` is accepted for `sqrt(D)`.
impl<T: Int> FromStr for QuadraticSurd<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, sq, r) = parse_surd_parts::<T>(s)?;
        let (q, disc) = sq.ok_or_else(|| Error::parse(format!("no sqrt term in {s:?}")))?;
        Self::new(p, q, disc, r)
    }
}

/// `(p, Some((q, disc)), r)`; the sqrt term is optional.
type SurdParts<T> = (T, Option<(T, T)>, T);

fn parse_surd_parts<T: Int>(input: &str) -> Result<SurdParts<T>> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let s = expand_radical_sign(&s);
    if s.is_empty() {
        return Err(Error::parse("empty surd"));
    }
    let (body, den) = match s.rfind('/') {
        Some(i) if !s[i + 1..].contains(')') => (&s[..i], parse_int::<T>(&s[i + 1..])?),
        _ => (s.as_str(), T::one()),
    };
    let body = if body.starts_with('(') && body.ends_with(')') && balanced(&body[1..body.len() - 1]) {
        &body[1..body.len() - 1]
    } else {
        body
    };

    let mut rational_part: Option<T> = None;
    let mut sqrt_part: Option<(T, T)> = None;
    for (negative, term) in split_terms(body)? {
        if let Some(idx) = term.find("sqrt(") {
            if sqrt_part.is_some() {
                return Err(Error::parse(format!("more than one sqrt term in {input:?}")));
            }
            let coeff = match &term[..idx] {
                "" => T::one(),
                c => parse_int::<T>(c.strip_suffix('*').unwrap_or(c))?,
            };
            let rest = &term[idx + 5..];
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(format!("unclosed sqrt in {input:?}")))?;
            let disc = parse_int::<T>(inner)?;
            let coeff = if negative { -coeff } else { coeff };
            sqrt_part = Some((coeff, disc));
        } else {
            if rational_part.is_some() {
                return Err(Error::parse(format!("more than one integer term in {input:?}")));
            }
            let v = parse_int::<T>(term)?;
            rational_part = Some(if negative { -v } else { v });
        }
    }
    Ok((rational_part.unwrap_or_else(T::zero), sqrt_part, den))
}

/// `√7` becomes `sqrt(7)`, `√(7)` becomes `sqrt(7)`.
fn expand_radical_sign(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 8);
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '√' {
            out.push(c);
            continue;
        }
        out.push_str("sqrt");
        if chars.peek() == Some(&'(') {
            continue;
        }
        out.push('(');
        while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
            out.push(d);
            chars.next();
        }
        out.push(')');
    }
    out
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// Splits on top-level `+`/`-`, returning `(negative, term)` pairs.
fn split_terms(body: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let bytes = body.as_bytes();
    let mut start = 0;
    let mut negative = false;
    let mut depth = 0i32;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if i > start {
                    out.push((negative, &body[start..i]));
                } else if i != 0 {
                    return Err(Error::parse(format!("dangling sign in {body:?}")));
                }
                negative = c == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= body.len() {
        return Err(Error::parse(format!("trailing sign in {body:?}")));
    }
    out.push((negative, &body[start..]));
    Ok(out)
}

/// Accepts either a surd or a rational; used by [`crate::Real`]'s parser.
pub(crate) fn parse_surd_or_rational<T: Int>(s: &str) -> Result<std::result::Result<QuadraticSurd<T>, Rational<T>>> {
    let t = s.trim();
    if !t.contains("sqrt") && !t.contains('√') {
        return Ok(Err(t.parse()?));
    }
    let (p, sq, r) = parse_surd_parts::<T>(t)?;
    let (q, disc) = sq.ok_or_else(|| Error::parse(format!("no sqrt term in {t:?}")))?;
    if let Some(root) = exact_sqrt(&disc) {
        return Ok(Err(Rational::new(p + q * root, r)?));
    }
    Ok(Ok(QuadraticSurd::new(p, q, disc, r)?))
}

impl<'de, T: Int> Deserialize<'de> for QuadraticSurd<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Int")]
        struct Raw<T> {
            #[serde(with = "crate::serde_int")]
            p: T,
            #[serde(with = "crate::serde_int")]
            q: T,
            #[serde(with = "crate::serde_int")]
            d: T,
            #[serde(with = "crate::serde_int")]
            r: T,
        }
        let raw = Raw::<T>::deserialize(d)?;
        QuadraticSurd::new(raw.p, raw.q, raw.d, raw.r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = QuadraticSurd<i64>;

    fn s(p: i64, q: i64, d: i64, r: i64) -> S {
        S::new(p, q, d, r).unwrap()
    }

    #[test]
    fn canonicalises_square_factors_and_signs() {
        let x = s(6, 2, 8, -4); // (6 + 2*sqrt 8)/(-4) = (-3 - 2 sqrt 2)/2
        assert_eq!((x.p(), x.q(), x.d(), x.r()), (&-3, &-2, &2, &2));
        assert_eq!(s(-3, 1, 380, 7), s(-3, 2, 95, 7));
        assert_eq!(s(-3, 1, 380, 7).q(), &2);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(S::new(1, 0, 2, 1).is_err());
        assert!(S::new(1, 1, 2, 0).is_err());
        assert!(S::new(1, 1, 9, 1).is_err());
        assert!(S::new(1, 1, -2, 1).is_err());
    }

    #[test]
    fn floor_and_sign() {
        assert_eq!(s(0, 1, 2, 1).floor(), 1);
        assert_eq!(s(0, -1, 2, 1).floor(), -2);
        assert_eq!(s(15, 1, 901, 26).floor(), 1);
        assert_eq!(s(15, -1, 901, 26).floor(), -1);
        assert_eq!(s(-3, 2, 95, 7).floor(), 2);
        assert!(s(1, -1, 2, 1).is_negative());
        assert!(s(2, -1, 2, 1).is_positive());
    }

    #[test]
    fn galois_conjugation() {
        assert_eq!(s(15, 1, 901, 26).conjugate(), s(15, -1, 901, 26));
        assert_eq!(s(0, 1, 2, 1).conjugate(), s(0, -1, 2, 1));
        assert_eq!(s(3, 5, 2, 7).conjugate(), s(3, -5, 2, 7));
        let x = s(3, 5, 2, 7);
        assert_eq!(x.conjugate().conjugate(), x);
        assert_ne!(x.conjugate(), x);
    }

    #[test]
    fn reciprocal_and_norm() {
        let x = s(1, 1, 2, 1);
        assert_eq!(x.recip(), s(-1, 1, 2, 1));
        assert_eq!(x.norm(), Rational::from_i64(-1));
        assert_eq!(s(15, 1, 901, 26).recip().neg(), s(15, -1, 901, 26));
    }

    #[test]
    fn minimal_polynomial_is_primitive() {
        let (a, b, c) = s(1, 1, 5, 2).minimal_polynomial();
        assert_eq!((a, b, c), (1, -1, -1));
        assert_eq!(s(1, 1, 5, 2).discriminant(), 5);
    }

    #[test]
    fn compare_with_rationals() {
        let sqrt2 = s(0, 1, 2, 1);
        assert_eq!(sqrt2.cmp_rational(&Rational::new(7, 5).unwrap()), Ordering::Greater);
        assert_eq!(sqrt2.cmp_rational(&Rational::new(3, 2).unwrap()), Ordering::Less);
        assert_eq!(sqrt2.cmp_rational(&Rational::infinity()), Ordering::Less);
    }

    #[test]
    fn parse_variants() {
        assert_eq!("(3+5*sqrt(2))/7".parse::<S>().unwrap(), s(3, 5, 2, 7));
        assert_eq!("sqrt(2)".parse::<S>().unwrap(), s(0, 1, 2, 1));
        assert_eq!("-sqrt(11)".parse::<S>().unwrap(), s(0, -1, 11, 1));
        assert_eq!("(15-sqrt(901))/26".parse::<S>().unwrap(), s(15, -1, 901, 26));
        assert_eq!("1+sqrt(5)/2".parse::<S>().unwrap(), s(1, 1, 5, 2));
        assert_eq!("(0+1*sqrt(2))/1".parse::<S>().unwrap(), s(0, 1, 2, 1));
        assert_eq!("3*√7".parse::<S>().unwrap(), s(0, 3, 7, 1));
        assert!("(1+2)/3".parse::<S>().is_err());
        assert!("sqrt(4)".parse::<S>().is_err());
        assert!("sqrt(2)+sqrt(3)".parse::<S>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for x in [s(-3, 2, 95, 7), s(15, -1, 901, 26), s(0, 1, 2, 1)] {
            assert_eq!(x.to_string().parse::<S>().unwrap(), x);
        }
        assert_eq!(s(1, 1, 2, 1).to_string(), "(1+1*sqrt(2))/1");
    }

    #[test]
    fn json_field_names() {
        let json = serde_json::to_string(&s(-3, 2, 95, 7)).unwrap();
        assert_eq!(json, r#"{"p":"-3","q":"2","d":"95","r":"7"}"#);
        let back: S = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s(-3, 2, 95, 7));
    }
}
