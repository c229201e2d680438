//! Lazy continued fractions of algebraic numbers, `e` and `pi`, and
//! certified decimal evaluation.

pub mod algebraic;
pub mod constants;
pub mod decimal;

pub use algebraic::{cf_of_algebraic, AlgebraicTerms, IntPolynomial, RealBracket};
pub use constants::{cf_of_e, cf_of_pi, pi_capacity, BracketTerms, PI_DIGITS};
pub use decimal::{eval_decimal, eval_decimal_with_budget, round_significant, DEFAULT_EVAL_TERMS};
