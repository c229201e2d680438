//! Exact computation of Dyer's involution `J` of the extended real line.
//!
//! `J` is reached three ways: rewriting continued fractions run by run,
//! XOR-ing boundary bit strings with `(01)^w`, and pushing PGL(2,Z) words
//! through the outer automorphism `(V, U, K) -> (UV, U, K)`. All arithmetic is
//! exact.
//!
//! The exact types are generic over the integer type (see [`Int`]); the
//! aliases below fix it to `BigInt` or `i64`.

pub mod cf;
pub mod codec;
pub mod error;
pub mod group;
pub mod int;
pub mod mobius;
pub mod rational;
pub mod real;
mod serde_int;
pub mod stream;
pub mod surd;
pub mod tree;

use num_bigint::BigInt;

pub use cf::{
    cf_of_rational, cf_of_real, cf_of_surd, convergents, galois_conjugate, mobius_apply,
    surd_of_periodic_cf, ContinuedFraction, TermSource, TermStream, Terms,
};
pub use codec::{
    decode_bits, encode_bits, is_noble, jimm_bits, jimm_q, jimm_rational_twovalued, jimm_runlength,
    jimm_surd, BitStream, JimmResult,
};
pub use error::{Error, Result};
pub use group::{decompose, dyer, fixed_point, verify_fe6, GeneratorWord, Letter};
pub use int::Int;
pub use mobius::MobiusMap;
pub use rational::Rational;
pub use stream::{cf_of_algebraic, cf_of_e, cf_of_pi, eval_decimal, IntPolynomial, RealBracket};
pub use real::Real;
pub use surd::QuadraticSurd;
pub use tree::{apply_shuffle, build_tree, jimm_approximant, sample_approximant, vertex_to_rational, EdgeWord, FareyTree, Tail, TreeAutomorphism, TrivalentVertex};

pub type BigRational = Rational<BigInt>;
pub type Rational64 = Rational<i64>;
pub type BigSurd = QuadraticSurd<BigInt>;
pub type Surd64 = QuadraticSurd<i64>;
pub type BigMobius = MobiusMap<BigInt>;
pub type Mobius64 = MobiusMap<i64>;
pub type BigReal = Real<BigInt>;
pub type BigCf = ContinuedFraction<BigInt>;
pub type Cf64 = ContinuedFraction<i64>;
