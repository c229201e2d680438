//! Boundary codes of the Farey tree and the three routes to `J` on them.

pub mod bits;
pub mod jimm;
pub mod runlength;

pub use bits::{boundary_representatives, decode_bits, encode_bits, BitStream, Bits, LazyBit, PeriodicBits};
pub use jimm::{
    is_noble, jimm_bits, jimm_cf, jimm_q, jimm_rational_twovalued, jimm_real, jimm_surd, JimmResult,
    DEFAULT_MAX_BITS,
};
pub use runlength::{jimm_runlength, jimm_runlength_with_budget};
