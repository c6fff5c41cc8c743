//! Exact geometry of the non-signaling polytope.

pub mod dd;
pub mod decompose;
pub mod enumerate;
pub mod extremality;
pub mod lp;
pub mod membership;

pub use decompose::{decompose_into_vertices, Decomposition};
pub use enumerate::{
    enumerate_vertex_classes, enumerate_vertices, is_deterministic, vertex_neighbors, Enumeration,
    EnumeratorRegistry, Limits, VertexEnumerator, DEFAULT_ENUMERATOR,
};
pub use extremality::{
    extremality_certificate, is_extremal, perturbation_basis, step_lengths, ExtremalityCertificate,
    Verdict,
};
pub use membership::{critical_visibility, maximize_functional, membership, MembershipResult};
