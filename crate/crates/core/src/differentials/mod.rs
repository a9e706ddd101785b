//! Kähler differentials, the de Rham complex, the naive cotangent complex and
//! the classifier built on them.

pub mod classify;
pub mod cotangent;
pub mod de_rham;
pub mod integration;

pub use classify::{
    classify, classify_morphism, classify_on_covering, kahler_differentials, naive_cotangent_complex, Classification,
    CotangentComplex, KahlerModule, Truncation, TruthTable, Verdict,
};
pub use de_rham::{de_rham_complex, exterior_derivative, DeRhamComplex, Form};
pub use integration::{etale_integration, integrate_report, Integration, IntegrationReport};
