//! Exact construction and verification of representations of `sl(r+1)` and
//! affine `sl(r)` by regular vector fields on the algebraic torus.
//!
//! The pipeline runs from a generalized Cartan matrix ([`cartan`]) through its
//! solution matrices ([`solution`]) to explicit vector-field images of the
//! Chevalley generators ([`representation`]), all over exact rationals. The
//! [`loop_algebra`] module checks the loop-algebra structure of the affine
//! images and [`oracle`] provides brute-force cross-checks.

#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod catalog;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod loop_algebra;
pub mod oracle;
pub mod render;
pub mod representation;
pub mod scalar;
pub mod solution;
pub mod vectorfield;

pub use cartan::{CartanKind, CartanType, DynkinDiagram, Gcm};
pub use error::{
    CartanError, LaurentError, LoopError, OracleError, ParseError, RepresentationError,
    SolutionError,
};
pub use laurent::{LaurentPoly, Monomial};
pub use loop_algebra::{certify, extract_t, LoopCertificate, LoopLedger};
pub use representation::{
    build_cartan_data, build_representation, kernel_check, verify_relations, CartanData,
    KernelReport, Relation, RelationReport, Representation, RepresentationJson,
};
pub use scalar::Scalar;
pub use solution::{normalized_solution_matrices, Orientation, SolutionMatrix};
pub use vectorfield::{Derivation, DerivationSpan};
