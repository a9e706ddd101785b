//! Finite-precision commutative algebra over p-adic Tate algebras and finite
//! test rings: presentations, Kähler differentials and the naive cotangent
//! complex, infinitesimal point sets, Witt vectors and Robba norms.

pub mod base;
pub mod differentials;
pub mod error;
pub mod infinitesimal;
pub mod localization;
pub mod par;
pub mod poly;
pub mod tate;
pub mod witt;

pub use error::{Error, Result};
pub use par::Exec;
