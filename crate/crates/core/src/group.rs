//! PGL(2,Z) as words in `V: x -> -x`, `U: x -> 1/x`, `K: x -> 1 - x` and
//! Dyer's outer automorphism `(V, U, K) -> (UV, U, K)`.
//!
//! Words read as composition: `KV` is `x -> K(V(x)) = 1 + x`.

use std::fmt;
use std::str::FromStr;

use crate::codec::jimm::{is_noble, jimm_surd};
use crate::error::{Error, Result};
use crate::int::{int, Int};
use crate::mobius::MobiusMap;
use crate::real::Real;
use crate::surd::QuadraticSurd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    V,
    U,
    K,
}

impl Letter {
    pub fn matrix<T: Int>(self) -> MobiusMap<T> {
        match self {
            Letter::V => MobiusMap::v(),
            Letter::U => MobiusMap::u(),
            Letter::K => MobiusMap::k(),
        }
    }

    fn symbol(self) -> char {
        match self {
            Letter::V => 'V',
            Letter::U => 'U',
            Letter::K => 'K',
        }
    }
}

/// A word reduced by `V^2 = U^2 = K^2 = 1` and `VU = UV`: no letter repeats
/// and every `V`,`U` pair is written `VU`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Self::default();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        match l {
            Letter::K => {
                if self.letters.last() == Some(&Letter::K) {
                    self.letters.pop();
                } else {
                    self.letters.push(Letter::K);
                }
            }
            Letter::V | Letter::U => {
                // The trailing V/U block is an element of the Klein group.
                let mut v = false;
                let mut u = false;
                while let Some(&last) = self.letters.last() {
                    match last {
                        Letter::V => v = !v,
                        Letter::U => u = !u,
                        Letter::K => break,
                    }
                    self.letters.pop();
                }
                if l == Letter::V {
                    v = !v;
                } else {
                    u = !u;
                }
                if v {
                    self.letters.push(Letter::V);
                }
                if u {
                    self.letters.push(Letter::U);
                }
            }
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self` followed by `other`, i.e. the map `self . other`.
    pub fn then(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn to_matrix<T: Int>(&self) -> MobiusMap<T> {
        self.letters.iter().fold(MobiusMap::identity(), |acc, l| &acc * &l.matrix())
    }

    /// Image under `V -> UV`, `U -> U`, `K -> K`.
    pub fn dyer(&self) -> GeneratorWord {
        let mut w = GeneratorWord::default();
        for &l in &self.letters {
            if l == Letter::V {
                w.push(Letter::U);
            }
            w.push(l);
        }
        w
    }

    pub fn s() -> Self {
        Self::new([Letter::V, Letter::U])
    }

    pub fn t() -> Self {
        Self::new([Letter::K, Letter::V])
    }

    pub fn t_inverse() -> Self {
        Self::new([Letter::V, Letter::K])
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "I");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

/// Letters `V U K S T` (with `S = VU`, `T = KV`), `I` for the identity, with
/// or without whitespace.
impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = GeneratorWord::default();
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c.to_ascii_uppercase() {
                'V' => w.push(Letter::V),
                'U' => w.push(Letter::U),
                'K' => w.push(Letter::K),
                'S' => {
                    w.push(Letter::V);
                    w.push(Letter::U);
                }
                'T' => {
                    w.push(Letter::K);
                    w.push(Letter::V);
                }
                'I' => {}
                other => return Err(Error::parse(format!("unknown generator {other:?}"))),
            }
        }
        Ok(w)
    }
}

/// Writes `m` as a word: the determinant `-1` case is reduced to `+1` by a
/// trailing `V`, then `m = T^q1 S T^q2 S ... T^qn` by the Euclidean
/// algorithm on the first column.
pub fn decompose<T: Int>(m: &MobiusMap<T>) -> GeneratorWord {
    let (a, b, c, d) = m.entries();
    let (mut a, mut b, mut c, mut d) = (a.clone(), b.clone(), c.clone(), d.clone());
    let flip = (a.clone() * d.clone() - b.clone() * c.clone()).is_negative();
    if flip {
        // m = m' V with m' = m V
        a = -a;
        c = -c;
    }
    let mut word = GeneratorWord::default();
    let push_t_power = |word: &mut GeneratorWord, q: &T| {
        let step = if q.is_positive() { GeneratorWord::t() } else { GeneratorWord::t_inverse() };
        let mut n = q.abs();
        while n.is_positive() {
            *word = word.then(&step);
            n = n - T::one();
        }
    };
    while !c.is_zero() {
        let q = a.div_floor(&c);
        // m = T^q S m'' with m'' = S^-1 T^-q m
        push_t_power(&mut word, &q);
        word = word.then(&GeneratorWord::s());
        let na = a.clone() - q.clone() * c.clone();
        let nb = b.clone() - q * d.clone();
        (a, b, c, d) = (c, d, -na, -nb);
    }
    // Now +-[[1, b], [0, 1]] up to sign, i.e. T^(b/a).
    push_t_power(&mut word, &(b / a));
    if flip {
        word = word.then(&GeneratorWord::new([Letter::V]));
    }
    word
}

/// The outer automorphism on a matrix, through its word.
pub fn dyer<T: Int>(m: &MobiusMap<T>) -> MobiusMap<T> {
    decompose(m).dyer().to_matrix()
}

/// Checks `J(m x) = dyer(m) J(x)` exactly.
pub fn verify_fe6<T: Int>(m: &MobiusMap<T>, x: &QuadraticSurd<T>) -> Result<bool> {
    let mx = m.apply_surd(x);
    if is_noble(x) || is_noble(&mx) {
        return Err(Error::NobleInput);
    }
    let lhs = jimm_surd(&mx).value().expect("non-noble input has a surd image");
    let rhs = jimm_surd(x).value().expect("non-noble input has a surd image").apply(&dyer(m));
    Ok(lhs == rhs)
}

/// Attracting fixed point of `dyer(m) . m`, a solution of `J(x) = m x`.
///
/// The composite must be hyperbolic with an irrational fixed point: its
/// discriminant `tr^2 - 4 det` must be positive and not a square.
pub fn fixed_point<T: Int>(m: &MobiusMap<T>) -> Result<QuadraticSurd<T>> {
    let n = &dyer(m) * m;
    let (a, _, c, d) = n.entries();
    let tr = n.trace();
    let det = n.det();
    let disc = tr.clone() * tr.clone() - int::<T>(4) * det.clone();
    let hyperbolic = disc.is_positive() && crate::int::exact_sqrt(&disc).is_none() && !c.is_zero();
    if !hyperbolic {
        return Err(Error::NotHyperbolic { trace: tr.to_string(), det: det.to_string() });
    }
    // Fixed points ((a - d) +- sqrt(disc)) / 2c; the eigenvalue c x + d =
    // (tr +- sqrt(disc)) / 2 is largest in modulus with the sign of tr.
    let sign = if tr.is_negative() { -T::one() } else { T::one() };
    QuadraticSurd::new(a.clone() - d.clone(), sign, disc, int::<T>(2) * c.clone())
}

/// Checks the defining property of [`fixed_point`]: `J(x) = m x`.
pub fn is_jimm_fixed<T: Int>(m: &MobiusMap<T>, x: &QuadraticSurd<T>) -> bool {
    jimm_surd(x).value() == Some(Real::Surd(m.apply_surd(x)))
}
