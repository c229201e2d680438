//! Boundary words of the Farey tree as bit strings.
//!
//! `x = S^e (LS)^n0 (L^2 S)^n1 ...` is written `0^n0 1^n1 0^n2 ...`, with the
//! `S` kept as a flag. Eventually constant strings are rational ends.

use std::fmt;

use crate::cf::{ContinuedFraction, Terms};
use crate::error::{Error, Result};
use crate::int::Int;

/// Bits shown by `Display` before the ellipsis.
const DISPLAY_BITS: usize = 24;

/// An eventually periodic string `prefix . cycle^w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicBits {
    pub prefix: Vec<bool>,
    pub cycle: Vec<bool>,
}

impl PeriodicBits {
    pub fn new(prefix: Vec<bool>, cycle: Vec<bool>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::invalid("empty bit cycle"));
        }
        Ok(PeriodicBits { prefix, cycle })
    }

    pub fn constant(bit: bool) -> Self {
        PeriodicBits { prefix: Vec::new(), cycle: vec![bit] }
    }

    pub fn get(&self, i: usize) -> bool {
        match self.prefix.get(i) {
            Some(&b) => b,
            None => self.cycle[(i - self.prefix.len()) % self.cycle.len()],
        }
    }

    /// Same string with the cycle starting at `offset` and repeated to a
    /// length that is a multiple of `len`.
    fn expanded(&self, offset: usize, len: usize) -> PeriodicBits {
        let prefix = (0..offset).map(|i| self.get(i)).collect();
        let cycle = (offset..offset + len).map(|i| self.get(i)).collect();
        PeriodicBits { prefix, cycle }
    }

    /// Term-wise XOR of two eventually periodic strings.
    pub fn xor(&self, other: &PeriodicBits) -> PeriodicBits {
        let offset = self.prefix.len().max(other.prefix.len());
        let len = lcm(self.cycle.len(), other.cycle.len());
        let a = self.expanded(offset, len);
        let b = other.expanded(offset, len);
        PeriodicBits {
            prefix: a.prefix.iter().zip(&b.prefix).map(|(x, y)| x ^ y).collect(),
            cycle: a.cycle.iter().zip(&b.cycle).map(|(x, y)| x ^ y).collect(),
        }
    }

    pub fn complement(&self) -> PeriodicBits {
        PeriodicBits {
            prefix: self.prefix.iter().map(|b| !b).collect(),
            cycle: self.cycle.iter().map(|b| !b).collect(),
        }
    }

    fn constant_tail(&self) -> Option<bool> {
        let c = self.cycle[0];
        self.cycle.iter().all(|&b| b == c).then_some(c)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One step of a lazily generated bit string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LazyBit {
    Bit(bool),
    /// Certificate that every remaining bit equals this one.
    ConstantTail(bool),
}

pub trait BitSource: Iterator<Item = Result<LazyBit>> + Send + Sync {
    fn clone_box(&self) -> Box<dyn BitSource>;
}

impl<I> BitSource for I
where
    I: Iterator<Item = Result<LazyBit>> + Clone + Send + Sync + 'static,
{
    fn clone_box(&self) -> Box<dyn BitSource> {
        Box::new(self.clone())
    }
}

impl Clone for Box<dyn BitSource> {
    fn clone(&self) -> Self {
        (**self).clone_box()
    }
}

pub struct LazyBits {
    source: Box<dyn BitSource>,
}

impl LazyBits {
    pub fn new(source: impl BitSource + 'static) -> Self {
        LazyBits { source: Box::new(source) }
    }

    pub fn reader(&self) -> Box<dyn BitSource> {
        self.source.clone()
    }
}

impl Clone for LazyBits {
    fn clone(&self) -> Self {
        LazyBits { source: self.source.clone() }
    }
}

impl fmt::Debug for LazyBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("LazyBits(..)")
    }
}

#[derive(Clone, Debug)]
pub enum Bits {
    Periodic(PeriodicBits),
    Lazy(LazyBits),
}

#[derive(Clone, Debug)]
pub struct BitStream {
    pub s_prefix: bool,
    pub bits: Bits,
}

/// Expands the certificate of a lazy source into plain bits.
struct Plain {
    inner: Box<dyn BitSource>,
    tail: Option<bool>,
}

impl Iterator for Plain {
    type Item = Result<bool>;
    fn next(&mut self) -> Option<Result<bool>> {
        if let Some(b) = self.tail {
            return Some(Ok(b));
        }
        match self.inner.next()? {
            Ok(LazyBit::Bit(b)) => Some(Ok(b)),
            Ok(LazyBit::ConstantTail(b)) => {
                self.tail = Some(b);
                Some(Ok(b))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

impl Clone for Plain {
    fn clone(&self) -> Self {
        Plain { inner: self.inner.clone(), tail: self.tail }
    }
}

impl BitStream {
    pub fn periodic(s_prefix: bool, bits: PeriodicBits) -> Self {
        BitStream { s_prefix, bits: Bits::Periodic(bits) }
    }

    pub fn lazy(s_prefix: bool, source: impl BitSource + 'static) -> Self {
        BitStream { s_prefix, bits: Bits::Lazy(LazyBits::new(source)) }
    }

    pub fn as_periodic(&self) -> Option<&PeriodicBits> {
        match &self.bits {
            Bits::Periodic(p) => Some(p),
            Bits::Lazy(_) => None,
        }
    }

    /// The infinite bit sequence.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Result<bool>> + Send + '_> {
        match &self.bits {
            Bits::Periodic(p) => Box::new(
                p.prefix.iter().copied().chain(p.cycle.iter().copied().cycle()).map(Ok),
            ),
            Bits::Lazy(l) => Box::new(Plain { inner: l.reader(), tail: None }),
        }
    }

    pub fn prefix(&self, n: usize) -> Result<Vec<bool>> {
        self.iter().take(n).collect()
    }

    /// `S0110...` style rendering of the first `n` bits.
    pub fn prefix_string(&self, n: usize) -> Result<String> {
        let mut s = String::with_capacity(n + 1);
        if self.s_prefix {
            s.push('S');
        }
        for b in self.prefix(n)? {
            s.push(if b { '1' } else { '0' });
        }
        Ok(s)
    }

    /// Flips every bit, which is `x -> 1/x` on the encoded value.
    pub fn complement(&self) -> BitStream {
        match &self.bits {
            Bits::Periodic(p) => BitStream::periodic(self.s_prefix, p.complement()),
            Bits::Lazy(l) => {
                let src = l.reader().map(|r| {
                    r.map(|b| match b {
                        LazyBit::Bit(x) => LazyBit::Bit(!x),
                        LazyBit::ConstantTail(x) => LazyBit::ConstantTail(!x),
                    })
                });
                BitStream::lazy(self.s_prefix, src)
            }
        }
    }
}

impl fmt::Display for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prefix_string(DISPLAY_BITS) {
            Ok(s) => write!(f, "{s}..."),
            Err(e) => write!(f, "<{e}>"),
        }
    }
}

impl PartialEq for BitStream {
    /// Periodic strings compare by value; lazy ones never compare equal.
    fn eq(&self, other: &Self) -> bool {
        match (&self.bits, &other.bits) {
            (Bits::Periodic(a), Bits::Periodic(b)) => {
                let diff = a.xor(b);
                self.s_prefix == other.s_prefix && !diff.prefix.iter().chain(&diff.cycle).any(|&x| x)
            }
            _ => false,
        }
    }
}

fn term_len<T: Int>(t: &T) -> Result<usize> {
    t.to_usize()
        .ok_or_else(|| Error::invalid(format!("partial quotient {t} is too large to expand into bits")))
}

fn push_runs<T: Int>(out: &mut Vec<bool>, terms: &[T], first_index: usize) -> Result<()> {
    for (i, t) in terms.iter().enumerate() {
        let bit = (first_index + i) % 2 == 1;
        out.extend(std::iter::repeat(bit).take(term_len(t)?));
    }
    Ok(())
}

/// Bits of `[n0, ..., nk]` followed by the constant run of index `k+1`, i.e.
/// the expansion with a final infinite term appended.
fn finite_natural<T: Int>(terms: &[T]) -> Result<PeriodicBits> {
    let mut prefix = Vec::new();
    push_runs(&mut prefix, terms, 0)?;
    let tail = terms.len() % 2 == 1;
    Ok(PeriodicBits { prefix, cycle: vec![tail] })
}

/// `0^n0 1^n1 ...`. A finite expansion is encoded by its natural
/// representative, the one with the constant tail appended; see
/// [`boundary_representatives`] for both.
pub fn encode_bits<T: Int>(cf: &ContinuedFraction<T>) -> Result<BitStream> {
    match &cf.terms {
        Terms::Finite(terms) => Ok(BitStream::periodic(cf.s_prefix, finite_natural(terms)?)),
        Terms::Periodic { preperiod, period } => {
            let mut prefix = Vec::new();
            push_runs(&mut prefix, preperiod, 0)?;
            let mut cycle = Vec::new();
            push_runs(&mut cycle, period, preperiod.len())?;
            if period.len() % 2 == 1 {
                push_runs(&mut cycle, period, preperiod.len() + 1)?;
            }
            Ok(BitStream::periodic(cf.s_prefix, PeriodicBits { prefix, cycle }))
        }
        Terms::Stream(_) => Ok(BitStream::lazy(cf.s_prefix, StreamBits::<T>::new(cf.iter()))),
    }
}

struct StreamBits<T> {
    terms: Box<dyn crate::cf::TermSource<T>>,
    index: usize,
    remaining: T,
    done: bool,
}

impl<T: Int> Clone for StreamBits<T> {
    fn clone(&self) -> Self {
        StreamBits {
            terms: self.terms.clone(),
            index: self.index,
            remaining: self.remaining.clone(),
            done: self.done,
        }
    }
}

impl<T: Int> StreamBits<T> {
    fn new(terms: Box<dyn crate::cf::TermSource<T>>) -> Self {
        StreamBits { terms, index: 0, remaining: T::zero(), done: false }
    }
}

impl<T: Int> Iterator for StreamBits<T> {
    type Item = Result<LazyBit>;

    fn next(&mut self) -> Option<Result<LazyBit>> {
        if self.done {
            return None;
        }
        while self.remaining.is_zero() {
            match self.terms.next() {
                None => {
                    self.done = true;
                    // The index of the run that never ends.
                    return Some(Ok(LazyBit::ConstantTail(self.index % 2 == 1)));
                }
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(e));
                }
                Some(Ok(t)) => {
                    self.remaining = t;
                    self.index += 1;
                }
            }
        }
        self.remaining = self.remaining.clone() - T::one();
        Some(Ok(LazyBit::Bit((self.index - 1) % 2 == 1)))
    }
}

/// The two strings naming a rational end, ordered `(left, right)`: the first
/// is the limit from below, the second from above.
///
/// For `[n0, ..., nk]` the natural string `a.(not c)^w` is the limit from
/// above when `k` is even, and the other string is `a'.(not c).c^w` with
/// the last run of `a` shortened by one. Zero and infinity pair an unprefixed
/// string with an `S`-prefixed one.
pub fn boundary_representatives<T: Int>(cf: &ContinuedFraction<T>) -> Result<(BitStream, BitStream)> {
    let Terms::Finite(terms) = &cf.terms else {
        return Err(Error::invalid("boundary representatives exist only for finite expansions"));
    };
    let s = cf.s_prefix;
    let natural = BitStream::periodic(s, finite_natural(terms)?);
    let (alternate, k_even) = if terms.is_empty() {
        // infinity: 0^w from below, S1^w from above
        (BitStream::periodic(!s, PeriodicBits::constant(true)), false)
    } else if terms.len() == 1 && terms[0].is_zero() {
        // zero: 1^w from above, S0^w from below
        (BitStream::periodic(!s, PeriodicBits::constant(false)), true)
    } else {
        let k = terms.len() - 1;
        let mut prefix = Vec::new();
        push_runs(&mut prefix, &terms[..k], 0)?;
        let c = k % 2 == 1;
        prefix.extend(std::iter::repeat(c).take(term_len(&terms[k])? - 1));
        prefix.push(!c);
        (BitStream::periodic(s, PeriodicBits { prefix, cycle: vec![c] }), k % 2 == 0)
    };
    Ok(if k_even { (alternate, natural) } else { (natural, alternate) })
}

fn runs(bits: &[bool]) -> Vec<usize> {
    // Run 0 is the (possibly empty) run of zeros.
    let mut out = vec![0usize];
    let mut current = false;
    for &b in bits {
        if b != current {
            out.push(0);
            current = b;
        }
        *out.last_mut().expect("nonempty") += 1;
    }
    out
}

fn to_terms<T: Int>(runs: &[usize]) -> Vec<T> {
    runs.iter().map(|&n| T::from_usize(n).expect("run length fits")).collect()
}

/// Run-length decoding of an eventually periodic string.
fn decode_periodic<T: Int>(s_prefix: bool, bits: &PeriodicBits) -> Result<ContinuedFraction<T>> {
    if let Some(c) = bits.constant_tail() {
        let mut r = runs(&bits.prefix);
        let last_bit = (r.len() - 1) % 2 == 1;
        // The tail either extends the last run or opens a new one; that
        // infinite run is dropped.
        if last_bit == c {
            r.pop();
        }
        return ContinuedFraction::finite(s_prefix, to_terms(&r));
    }
    // Extend by one cycle so the prefix ends on the cycle's last bit, then
    // rotate the cycle to start on a run boundary.
    let mut prefix = bits.prefix.clone();
    prefix.extend_from_slice(&bits.cycle);
    let n = bits.cycle.len();
    let shift = (0..n).find(|&i| bits.cycle[i] != bits.cycle[(i + n - 1) % n]).expect("non-constant");
    prefix.extend_from_slice(&bits.cycle[..shift]);
    let mut cycle = bits.cycle.clone();
    cycle.rotate_left(shift);
    let pre_runs = runs(&prefix);
    let mut cyc_runs = vec![0usize];
    let mut current = cycle[0];
    for &b in &cycle {
        if b != current {
            cyc_runs.push(0);
            current = b;
        }
        *cyc_runs.last_mut().expect("nonempty") += 1;
    }
    ContinuedFraction::periodic(s_prefix, to_terms(&pre_runs), to_terms(&cyc_runs))
}

/// Decodes runs back into partial quotients.
///
/// Periodic strings decode exactly. A lazy string is scanned for `max_bits`
/// bits: a constant-tail certificate in that window gives a finite
/// expansion, a window without a single run change is `Undecided` (or the
/// source's own error), and anything else becomes a stream whose terms
/// fail with `Undecided` once a single run stays open for more than
/// `max_bits` bits.
pub fn decode_bits<T: Int>(b: &BitStream, max_bits: usize) -> Result<ContinuedFraction<T>> {
    let lazy = match &b.bits {
        Bits::Periodic(p) => return decode_periodic(b.s_prefix, p),
        Bits::Lazy(l) => l,
    };
    let mut window = Vec::new();
    let mut changed = false;
    for item in lazy.reader().take(max_bits) {
        let item = match item {
            Ok(item) => item,
            // The terms before the failure are still determined.
            Err(_) if changed => break,
            Err(e) => return Err(e),
        };
        match item {
            LazyBit::Bit(x) => {
                // A leading 1 closes the empty run of zeros.
                changed |= window.last().map_or(x, |&y| y != x);
                window.push(x);
            }
            LazyBit::ConstantTail(c) => {
                return decode_periodic(b.s_prefix, &PeriodicBits { prefix: window, cycle: vec![c] });
            }
        }
    }
    if !changed {
        return Err(Error::Undecided { max_bits });
    }
    Ok(ContinuedFraction::stream(b.s_prefix, RunTerms::<T>::new(lazy.reader(), max_bits)))
}

struct RunTerms<T> {
    bits: Box<dyn BitSource>,
    max_bits: usize,
    current: bool,
    run: usize,
    tail: Option<bool>,
    done: bool,
    _t: std::marker::PhantomData<fn() -> T>,
}

impl<T> Clone for RunTerms<T> {
    fn clone(&self) -> Self {
        RunTerms { bits: self.bits.clone(), _t: Default::default(), ..*self }
    }
}

impl<T: Int> RunTerms<T> {
    fn new(bits: Box<dyn BitSource>, max_bits: usize) -> Self {
        RunTerms { bits, max_bits, current: false, run: 0, tail: None, done: false, _t: Default::default() }
    }

    fn emit(&mut self, next_bit: bool) -> T {
        let t = T::from_usize(self.run).expect("run length fits");
        self.current = next_bit;
        self.run = 1;
        t
    }
}

impl<T: Int> Iterator for RunTerms<T> {
    type Item = Result<T>;

    fn next(&mut self) -> Option<Result<T>> {
        if self.done {
            return None;
        }
        if let Some(c) = self.tail {
            // Bits after the certificate are constant: the open run is
            // infinite unless it differs from the tail.
            self.done = true;
            return (c != self.current).then(|| Ok(T::from_usize(self.run).expect("fits")));
        }
        loop {
            match self.bits.next() {
                None => {
                    self.done = true;
                    return Some(Err(Error::invalid("bit source ended without a certificate")));
                }
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(e));
                }
                Some(Ok(LazyBit::ConstantTail(c))) => {
                    self.tail = Some(c);
                    return self.next();
                }
                Some(Ok(LazyBit::Bit(x))) => {
                    if x == self.current {
                        self.run += 1;
                        if self.run > self.max_bits {
                            self.done = true;
                            return Some(Err(Error::Undecided { max_bits: self.max_bits }));
                        }
                    } else {
                        return Some(Ok(self.emit(x)));
                    }
                }
            }
        }
    }
}
