//! Coefficient worlds: truncated p-adic numbers, exact norms and finite rings.

pub mod finite_ring;
pub mod norm;
pub mod padic;
pub mod ring_spec;

pub use finite_ring::{FiniteRing, Ideal};
pub use norm::Norm;
pub use padic::{PadicNumber, PadicOp};
pub use ring_spec::{default_corpus, RingSpec};
