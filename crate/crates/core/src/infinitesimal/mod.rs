//! Point functors over finite rings, nilpotent ideals and PD structures, and
//! the lifting-based classifiers.

mod lifting;
mod pd;
mod points;

pub use lifting::{
    classify_lifting, classify_lifting_morphism, crystalline_comparison, de_rham_comparison, LiftingClassification,
    LiftingMode, MapKind, PdIndex, RingEvidence, TestRing,
};
pub use pd::{enumerate_pd_structures, verify_pd, PdStructure, MAX_PD_IDEAL};
pub use points::{de_rham_point_set, point_set, PointSet, SEARCH_BOUND};

use crate::base::{FiniteRing, Ideal};

/// Ideals inside the nilradical with their nilpotency exponents.
pub fn enumerate_nilpotent_ideals(ring: &FiniteRing) -> Vec<(Ideal, u32)> {
    ring.nilpotent_ideals()
}

/// Number of crystalline classes of `pres` over `ring`.
pub fn crystalline_point_count(pres: &crate::tate::Presentation, ring: &TestRing, exec: crate::Exec) -> crate::Result<usize> {
    crystalline_comparison(pres, ring, exec).map(|(_, c, _)| c)
}
