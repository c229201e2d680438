//! The bipartite Farey tree with edges `PSL(2,Z)`, words in `S: z -> -1/z`
//! and `L: z -> (z - 1)/z`, shuffles of its trivalent vertices and the
//! finite-mask approximants of `J`.
//!
//! A path `S^e L^e1 S L^e2 S ...` from the base edge `I` reads as the bit
//! string `e1 e2 ...` with `L -> 0` and `L^2 -> 1`, matching the codec.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::cf::cf_of_real;
use crate::codec::bits::{decode_bits, encode_bits, BitStream, PeriodicBits};
use crate::error::{Error, Result};
use crate::int::{int, Int};
use crate::mobius::MobiusMap;
use crate::rational::Rational;
use crate::real::Real;

pub const MAX_TREE_DEPTH: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    S,
    L,
    L2,
}

impl Piece {
    fn is_rotation(self) -> bool {
        self != Piece::S
    }

    fn power(self) -> u8 {
        match self {
            Piece::S => 0,
            Piece::L => 1,
            Piece::L2 => 2,
        }
    }

    fn matrix<T: Int>() -> [MobiusMap<T>; 2] {
        let s = MobiusMap::s();
        let l = MobiusMap::new(T::one(), -T::one(), T::one(), T::zero()).expect("det 1");
        [s, l]
    }
}

/// A freely reduced word in `S`, `L`, `L^2`: an element of `PSL(2,Z)` and
/// an edge of the tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeWord {
    pieces: Vec<Piece>,
}

impl EdgeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(pieces: impl IntoIterator<Item = Piece>) -> Self {
        let mut w = Self::default();
        for p in pieces {
            w.push(p);
        }
        w
    }

    fn push(&mut self, p: Piece) {
        match (self.pieces.last().copied(), p) {
            (Some(Piece::S), Piece::S) => {
                self.pieces.pop();
            }
            (Some(last), p) if last.is_rotation() && p.is_rotation() => {
                self.pieces.pop();
                match (last.power() + p.power()) % 3 {
                    1 => self.pieces.push(Piece::L),
                    2 => self.pieces.push(Piece::L2),
                    _ => {}
                }
            }
            _ => self.pieces.push(p),
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn then(&self, p: Piece) -> EdgeWord {
        let mut w = self.clone();
        w.push(p);
        w
    }

    pub fn to_mobius<T: Int>(&self) -> MobiusMap<T> {
        let [s, l] = Piece::matrix::<T>();
        let l2 = &l * &l;
        self.pieces.iter().fold(MobiusMap::identity(), |acc, p| match p {
            Piece::S => &acc * &s,
            Piece::L => &acc * &l,
            Piece::L2 => &acc * &l2,
        })
    }

    /// Number of `S` letters.
    pub fn s_count(&self) -> usize {
        self.pieces.iter().filter(|&&p| p == Piece::S).count()
    }

    /// The boundary bits of the path: the leading `S` flag and one bit per
    /// rotation letter.
    pub fn bits(&self) -> (bool, Vec<bool>) {
        let s_prefix = self.pieces.first() == Some(&Piece::S);
        let bits = self.pieces.iter().filter(|p| p.is_rotation()).map(|&p| p == Piece::L2).collect();
        (s_prefix, bits)
    }

    /// The edge `S^e L^b1 S L^b2 S ... L^bn` reached by a bit prefix.
    pub fn from_bits(s_prefix: bool, bits: &[bool]) -> EdgeWord {
        let mut w = EdgeWord::default();
        if s_prefix {
            w.push(Piece::S);
        }
        for (i, &b) in bits.iter().enumerate() {
            if i > 0 {
                w.push(Piece::S);
            }
            w.push(if b { Piece::L2 } else { Piece::L });
        }
        w
    }
}

impl fmt::Display for EdgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "I");
        }
        let names: Vec<&str> = self
            .pieces
            .iter()
            .map(|p| match p {
                Piece::S => "S",
                Piece::L => "L",
                Piece::L2 => "L2",
            })
            .collect();
        write!(f, "{}", names.join(" "))
    }
}

/// Letters `S`, `L`, `L2` (or `L^2`), `I` for the identity, separated by
/// whitespace or not.
impl FromStr for EdgeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = EdgeWord::default();
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            match c {
                'S' => w.push(Piece::S),
                'I' => {}
                'L' => {
                    if chars.peek() == Some(&'^') {
                        chars.next();
                    }
                    if chars.peek() == Some(&'2') {
                        chars.next();
                        w.push(Piece::L2);
                    } else {
                        w.push(Piece::L);
                    }
                }
                other => return Err(Error::parse(format!("unexpected {other:?} in edge word"))),
            }
        }
        Ok(w)
    }
}

/// The coset `{W, WL, WL^2}`, kept as the representative `W` that is empty
/// or ends in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrivalentVertex(EdgeWord);

impl TrivalentVertex {
    pub fn of_edge(e: &EdgeWord) -> Self {
        let mut w = e.clone();
        if w.pieces.last().is_some_and(|p| p.is_rotation()) {
            w.pieces.pop();
        }
        TrivalentVertex(w)
    }

    pub fn base() -> Self {
        TrivalentVertex(EdgeWord::identity())
    }

    pub fn word(&self) -> &EdgeWord {
        &self.0
    }

    /// Distance from the base edge, counted in trivalent steps.
    pub fn level(&self) -> usize {
        self.0.s_count()
    }

    pub fn edges(&self) -> [EdgeWord; 3] {
        [self.0.clone(), self.0.then(Piece::L), self.0.then(Piece::L2)]
    }
}

/// By level, then by word.
impl Ord for TrivalentVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level(), &self.0).cmp(&(other.level(), &other.0))
    }
}

impl PartialOrd for TrivalentVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TrivalentVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.edges().map(|e| e.to_string()).join(", "))
    }
}

/// The coset `{W, WS}`, kept as the representative not ending in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BivalentVertex(EdgeWord);

impl BivalentVertex {
    pub fn of_edge(e: &EdgeWord) -> Self {
        let mut w = e.clone();
        if w.pieces.last() == Some(&Piece::S) {
            w.pieces.pop();
        }
        BivalentVertex(w)
    }

    pub fn word(&self) -> &EdgeWord {
        &self.0
    }

    pub fn edges(&self) -> [EdgeWord; 2] {
        [self.0.clone(), self.0.then(Piece::S)]
    }
}

impl fmt::Display for BivalentVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.edges();
        write!(f, "{{{a}, {b}}}")
    }
}

/// The edges of word length at most `depth` and their endpoints.
#[derive(Clone, Debug)]
pub struct FareyTree {
    depth: usize,
    edges: Vec<EdgeWord>,
    parent: HashMap<EdgeWord, EdgeWord>,
    trivalent: Vec<TrivalentVertex>,
    bivalent: Vec<BivalentVertex>,
}

impl FareyTree {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Edges in breadth-first order, starting with `I`.
    pub fn edges(&self) -> &[EdgeWord] {
        &self.edges
    }

    /// The neighbouring edge one letter closer to `I`.
    pub fn parent(&self, e: &EdgeWord) -> Option<&EdgeWord> {
        self.parent.get(e)
    }

    /// Sorted by level, then word.
    pub fn trivalent_vertices(&self) -> &[TrivalentVertex] {
        &self.trivalent
    }

    pub fn bivalent_vertices(&self) -> &[BivalentVertex] {
        &self.bivalent
    }

    pub fn contains(&self, e: &EdgeWord) -> bool {
        e.len() <= self.depth
    }
}

pub fn build_tree(depth: usize) -> Result<FareyTree> {
    if depth > MAX_TREE_DEPTH {
        return Err(Error::DepthTooLarge { depth, max: MAX_TREE_DEPTH });
    }
    let mut edges = vec![EdgeWord::identity()];
    let mut parent = HashMap::new();
    let mut layer = vec![EdgeWord::identity()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for e in &layer {
            for p in [Piece::S, Piece::L, Piece::L2] {
                let child = e.then(p);
                if child.len() == e.len() + 1 {
                    parent.insert(child.clone(), e.clone());
                    next.push(child);
                }
            }
        }
        edges.extend(next.iter().cloned());
        layer = next;
    }
    let trivalent: BTreeSet<TrivalentVertex> = edges.iter().map(TrivalentVertex::of_edge).collect();
    let bivalent: BTreeSet<BivalentVertex> = edges.iter().map(BivalentVertex::of_edge).collect();
    Ok(FareyTree {
        depth,
        edges,
        parent,
        trivalent: trivalent.into_iter().collect(),
        bivalent: bivalent.into_iter().collect(),
    })
}

/// `W(1)` for the representative `W`. Every trivalent vertex has a value
/// other than `0` and `infinity`; `ExcludedVertex` guards that.
pub fn vertex_to_rational<T: Int>(v: &TrivalentVertex) -> Result<Rational<T>> {
    let x = v.0.to_mobius::<T>().apply_rational(&Rational::one());
    if x.is_zero() || x.is_infinite() {
        return Err(Error::ExcludedVertex);
    }
    Ok(x)
}

/// The Farey interval `[W(0), WS(0)]` of the vertex `{W, WS}`.
pub fn bivalent_interval<T: Int>(v: &BivalentVertex) -> (Rational<T>, Rational<T>) {
    let [w, ws] = v.edges();
    let zero = Rational::zero();
    (w.to_mobius::<T>().apply_rational(&zero), ws.to_mobius::<T>().apply_rational(&zero))
}

/// A product of shuffles `sigma_v`, each exchanging the two branches
/// `WL...` and `WL^2...` below `v = {W, WL, WL^2}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeAutomorphism {
    shuffle_set: BTreeSet<TrivalentVertex>,
}

impl TreeAutomorphism {
    pub fn new(vertices: impl IntoIterator<Item = TrivalentVertex>) -> Self {
        TreeAutomorphism { shuffle_set: vertices.into_iter().collect() }
    }

    /// Every trivalent vertex of the tree.
    pub fn all(tree: &FareyTree) -> Self {
        Self::new(tree.trivalent.iter().cloned())
    }

    /// The trivalent vertices at odd level.
    pub fn jimm(tree: &FareyTree) -> Self {
        Self::new(tree.trivalent.iter().filter(|v| v.level() % 2 == 1).cloned())
    }

    pub fn shuffle_set(&self) -> &BTreeSet<TrivalentVertex> {
        &self.shuffle_set
    }

    /// Applies the shuffles nearest the base edge first, each to the word
    /// produced so far.
    pub fn apply(&self, e: &EdgeWord) -> EdgeWord {
        let mut w = e.clone();
        for v in &self.shuffle_set {
            w = shuffle(v, &w);
        }
        w
    }
}

fn shuffle(v: &TrivalentVertex, e: &EdgeWord) -> EdgeWord {
    let n = v.0.len();
    if e.pieces.len() <= n || e.pieces[..n] != v.0.pieces[..] {
        return e.clone();
    }
    let mut pieces = e.pieces.clone();
    pieces[n] = match pieces[n] {
        Piece::L => Piece::L2,
        Piece::L2 => Piece::L,
        Piece::S => return e.clone(),
    };
    EdgeWord { pieces }
}

pub fn apply_shuffle(tree: &FareyTree, a: &TreeAutomorphism, e: &EdgeWord) -> Result<EdgeWord> {
    if !tree.contains(e) {
        return Err(Error::invalid(format!("edge {e} is deeper than the tree")));
    }
    Ok(a.apply(e))
}

/// Constant tail of the approximant mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Tail {
    #[default]
    Zeros,
    Ones,
}

impl FromStr for Tail {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeros" => Ok(Tail::Zeros),
            "ones" => Ok(Tail::Ones),
            _ => Err(Error::parse(format!("tail must be zeros or ones, not {s:?}"))),
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::Zeros => "zeros",
            Tail::Ones => "ones",
        })
    }
}

/// The finite shuffle mask: `2n` bits of `(01)^w` (of `(10)^w` after an
/// `S`), then the constant tail.
fn approximant_mask(n: usize, s_prefix: bool, tail: Tail) -> PeriodicBits {
    let prefix = (0..2 * n).map(|i| (i % 2 == 1) != s_prefix).collect();
    PeriodicBits::new(prefix, vec![tail == Tail::Ones]).expect("nonempty cycle")
}

/// The approximant `theta_n`: the natural bit string of `x` XOR the finite
/// mask, decoded. `n = 0` with zero tail is the identity.
pub fn jimm_approximant<T: Int>(n: usize, x: &Real<T>, tail: Tail) -> Result<Real<T>> {
    let cf = cf_of_real(x, usize::MAX)?;
    let bits = encode_bits(&cf)?;
    let p = bits.as_periodic().expect("finite and periodic expansions encode periodically");
    let out = BitStream::periodic(bits.s_prefix, p.xor(&approximant_mask(n, bits.s_prefix, tail)));
    decode_bits::<T>(&out, 0)?.value()
}

/// `samples` equally spaced rationals from `lo` to `hi` inclusive, with
/// their approximant values.
pub fn sample_approximant<T: Int>(
    n: usize,
    lo: &Rational<T>,
    hi: &Rational<T>,
    samples: usize,
    tail: Tail,
) -> Result<Vec<(Rational<T>, Rational<T>)>> {
    if lo.is_infinite() || hi.is_infinite() || lo >= hi {
        return Err(Error::invalid(format!("range [{lo}, {hi}] is not a finite interval")));
    }
    if samples < 2 {
        return Err(Error::invalid("at least two samples are needed to include both endpoints"));
    }
    let step = (hi.clone() - lo.clone()) / Rational::from_integer(int::<T>(samples as i64 - 1));
    (0..samples)
        .map(|i| {
            let x = if i + 1 == samples {
                hi.clone()
            } else {
                lo.clone() + step.clone() * Rational::from_integer(int::<T>(i as i64))
            };
            match jimm_approximant(n, &Real::Rational(x.clone()), tail)? {
                Real::Rational(y) => Ok((x, y)),
                Real::Surd(s) => Err(Error::invalid(format!("approximant of a rational gave {s}"))),
            }
        })
        .collect()
}

/// Writes `x,theta_n_x` rows with both columns as `p/q`.
pub fn write_csv<T: Int, W: Write>(rows: &[(Rational<T>, Rational<T>)], mut out: W) -> std::io::Result<()> {
    writeln!(out, "x,theta_n_x")?;
    for (x, y) in rows {
        writeln!(out, "{}/{},{}/{}", x.numer(), x.denom(), y.numer(), y.denom())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::jimm::jimm_q;

    type Q = Rational<i64>;

    fn e(s: &str) -> EdgeWord {
        s.parse().unwrap()
    }

    #[test]
    fn word_reduction() {
        assert_eq!(e("S S"), EdgeWord::identity());
        assert_eq!(e("L L"), e("L2"));
        assert_eq!(e("L L2"), EdgeWord::identity());
        assert_eq!(e("L^2 L^2"), e("L"));
        assert_eq!(e("LSL2").to_string(), "L S L2");
        assert_eq!(e("L").to_mobius::<i64>().pow(3), MobiusMap::identity());
        assert_eq!(e("L S").to_mobius::<i64>(), MobiusMap::t());
    }

    #[test]
    fn small_trees() {
        let t0 = build_tree(0).unwrap();
        assert_eq!(t0.edges(), &[EdgeWord::identity()]);
        assert_eq!(t0.trivalent_vertices(), &[TrivalentVertex::base()]);
        assert_eq!(t0.bivalent_vertices().len(), 1);
        assert_eq!(t0.bivalent_vertices()[0].edges(), [e("I"), e("S")]);
        let t1 = build_tree(1).unwrap();
        assert_eq!(t1.edges().len(), 4);
        assert_eq!(TrivalentVertex::base().edges(), [e("I"), e("L"), e("L2")]);
        let t2 = build_tree(2).unwrap();
        for w in ["L", "L2", "S"] {
            assert!(t2.edges().contains(&e(w)));
        }
        assert_eq!(t2.parent(&e("L S")), Some(&e("L")));
        assert!(matches!(build_tree(21), Err(Error::DepthTooLarge { depth: 21, max: 20 })));
    }

    #[test]
    fn vertex_values() {
        let v = |w: &str| vertex_to_rational::<i64>(&TrivalentVertex::of_edge(&e(w))).unwrap();
        assert_eq!(v("I"), Q::one());
        assert_eq!(v("L"), Q::one());
        assert_eq!(v("L S"), Q::from_i64(2));
        assert_eq!(v("L2 S"), Q::new(1, 2).unwrap());
        assert_eq!(v("S"), Q::from_i64(-1));
        assert_eq!(v("L S L2 S"), Q::new(3, 2).unwrap());
    }

    #[test]
    fn bivalent_intervals() {
        let iv = |w: &str| bivalent_interval::<i64>(&BivalentVertex::of_edge(&e(w)));
        assert_eq!(iv("I"), (Q::zero(), Q::infinity()));
        assert_eq!(iv("L"), (Q::infinity(), Q::one()));
        assert_eq!(iv("L2"), (Q::one(), Q::zero()));
    }

    #[test]
    fn base_shuffle_swaps_l() {
        let tree = build_tree(4).unwrap();
        let a = TreeAutomorphism::new([TrivalentVertex::base()]);
        assert_eq!(apply_shuffle(&tree, &a, &e("L")).unwrap(), e("L2"));
        assert_eq!(apply_shuffle(&tree, &a, &e("L2 S L")).unwrap(), e("L S L"));
        assert_eq!(apply_shuffle(&tree, &a, &e("S L")).unwrap(), e("S L"));
        for edge in tree.edges() {
            assert_eq!(a.apply(&a.apply(edge)), *edge);
        }
    }

    #[test]
    fn vertex_shuffle_matches_jimm_q() {
        let tree = build_tree(12).unwrap();
        let j = TreeAutomorphism::jimm(&tree);
        for v in tree.trivalent_vertices() {
            let x = vertex_to_rational::<i64>(v).unwrap();
            let image = TrivalentVertex::of_edge(&j.apply(v.word()));
            assert_eq!(jimm_q(&x), vertex_to_rational(&image).unwrap(), "at {v}");
        }
    }

    #[test]
    fn approximant_basics() {
        let x = Real::Rational(Q::new(3, 7).unwrap());
        assert_eq!(jimm_approximant(0, &x, Tail::Zeros).unwrap(), x);
        let sqrt2 = Real::Surd(crate::surd::QuadraticSurd::new(0i64, 1, 2, 1).unwrap());
        assert_eq!(jimm_approximant(0, &sqrt2, Tail::Zeros).unwrap(), sqrt2);
        assert_eq!(jimm_approximant(1, &Real::Rational(Q::one()), Tail::Zeros).unwrap(), Real::Rational(Q::from_i64(2)));
    }

    #[test]
    fn csv_layout() {
        let rows = sample_approximant(2, &Q::zero(), &Q::one(), 3, Tail::Zeros).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].0, Q::zero());
        assert_eq!(rows[2].0, Q::one());
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,theta_n_x\n0/1,"), "{text}");
        assert_eq!(text.lines().count(), 4);
    }
}
