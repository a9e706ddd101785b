//! Witt vectors, tilting, and truncated Teichmüller expansions with interval
//! Gauss norms.

mod robba;
mod tilt;
mod universal;
mod vector;

pub use robba::{interval_norm, phi_action, robba_norm, PerfectSeries, RobbaElement, DEFAULT_SUPPORT};
pub use tilt::{tilt, Tilt};
pub use universal::CharPRing;
pub use vector::{
    all_vectors, frobenius_witt, restrict, verschiebung, witt_arith, witt_neg, witt_sub, WittOp, WittVector, MAX_LENGTH,
    PRIMES,
};
