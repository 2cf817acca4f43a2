//! Exact-arithmetic structure theory for finite-dimensional Lie-Yamaguti
//! algebras: axiom and representation checking, the Yamaguti cochain complex
//! and its cohomology, formal one-parameter deformations with their
//! obstruction calculus, and free graded algebras presented by planar trees.
//!
//! Everything is over the rationals and fully deterministic: fixed basis
//! orders, canonical kernel bases, reproducible randomness behind explicit
//! seeds.

pub mod algebra;
pub mod cochain;
pub mod coboundary;
pub mod cohomology;
pub mod corpus;
pub mod deform;
pub mod free;
pub mod io;
pub mod linalg;
pub mod rep;

pub use algebra::{AxiomReport, ConstructError, IdentityCheck, LieYamagutiAlgebra, Violation};
pub use cochain::{Cochain, CochainPair};
pub use deform::{
    are_equivalent, check_deformation, extend_one_order, extension_by_cocycle, integrate,
    is_rigid_sufficient, normalize, obstruction, transport, DeformError, DeformationReport,
    Equivalence, Extension, FormalIsomorphism, IntegrateError, Normalized, ObstructionClass,
    ObstructionPair, TruncatedDeformation,
};
pub use free::{
    enumerate_words, evaluate, graded_dimensions, parse_term, to_term, FreeError, FreeLya,
    GradedPiece, ParseError, RelationSpan, TreeWord,
};
pub use io::{
    parse_algebra, parse_cochain, parse_deformation, parse_representation, serialize_algebra,
    serialize_cochain, serialize_deformation, serialize_representation, IoError,
};
pub use linalg::{frac, int, Matrix, Scalar, Subspace};
pub use rep::{Representation, RepresentationReport};
