//! Combinatorics of taut and veering ideal triangulations of cusped
//! oriented 3-manifolds, together with the machinery needed to state and
//! verify, in exact rational arithmetic, the duality between the cone of
//! carried surface classes and the cone spanned by classes of minimal
//! stable loops.
//!
//! The main pipeline is:
//!
//! 1. [`triangulation`]: parse a triangulation (explicit JSON or taut
//!    isomorphism signature), build the face/edge/cusp quotients, propagate
//!    coorientations and tetrahedron orientations, validate tautness and
//!    veeringness.
//! 2. [`boundary`]: flat triangles on the cusp tori, ladders, ladderpoles
//!    and the cooriented boundary train track.
//! 3. [`stable_track`]: the stable train track dual to the veering
//!    structure, its transition digraph, and minimal stable loops.
//! 4. [`homology`]: the dual spine chain complex, Smith normal form,
//!    `H_1` presentations, transversalized loop classes and the pairing
//!    between weight vectors and loops.
//! 5. [`carried`]: the carried-surface weight cone, upward flips, the
//!    fiber/non-fiber search, and sheet-level surface reconstruction.
//! 6. [`cones`]: exact rational polyhedral cones by double description.
//! 7. [`blowup`]: dynamic blowups of pseudo-Anosov stars and fillings of
//!    even families by cooriented segments.
//! 8. [`duality`]: the end-to-end duality check and batch reports.

pub mod blowup;
pub mod boundary;
pub mod carried;
pub mod cones;
pub mod duality;
pub mod homology;
pub mod perm;
pub mod stable_track;
pub mod triangulation;

pub use perm::Perm4;
pub use triangulation::{RawTriangulation, VeeringTriangulation};

/// Errors shared by all modules of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input JSON does not match the expected schema.
    #[error("schema error: {0}")]
    Schema(String),
    /// The gluing table is not a valid face pairing.
    #[error("gluing error: {0}")]
    Gluing(String),
    /// Face coorientations cannot be propagated consistently.
    #[error("no consistent coorientation: {0}")]
    NoCoorientation(String),
    /// Tetrahedron orientations cannot be propagated consistently.
    #[error("triangulation is not orientable: {0}")]
    NotOrientable(String),
    /// The taut angle structure fails one of its axioms.
    #[error("tautness error: {0}")]
    Tautness(String),
    /// The taut structure is not veering.
    #[error("veering error: {0}")]
    Veering(String),
    /// A taut isomorphism signature is malformed.
    #[error("signature error: {0}")]
    Signature(String),
    /// A derived combinatorial structure is malformed.
    #[error("structure error: {0}")]
    Structure(String),
    /// A pinned convention failed to produce the promised object.
    #[error("convention error: {0}")]
    Convention(String),
    /// A face vector is not a cycle of the dual spine complex.
    #[error("not a cycle: {0}")]
    NotACycle(String),
    /// A weight vector violates nonnegativity or a branch equation.
    #[error("not carried: {0}")]
    NotCarried(String),
    /// An upward flip was requested at a tetrahedron that cannot flip.
    #[error("not flippable: {0}")]
    NotFlippable(String),
    /// Stable loop extraction was requested on a flippable vector.
    #[error("vector is still flippable: {0}")]
    Flippable(String),
    /// Cone dimension exceeds the desk-scale guard.
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionGuard { dim: usize, cap: usize },
    /// Two vectors or cones live in different ambient dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Regions are not incident along a single common vertex.
    #[error("regions not incident at a single vertex: {0}")]
    NotAdjacentAtVertex(String),
    /// Regions have equal interval orientations, so no blowup exists.
    #[error("regions have the same orientation: {0}")]
    SameOrientation(String),
    /// A configuration is not invariant under the declared rotation.
    #[error("not symmetric: {0}")]
    NotSymmetric(String),
    /// Signed boundary points do not sum to zero.
    #[error("family is not even: {0}")]
    OddFamily(String),
    /// Brute-force search size guard.
    #[error("size guard: {0}")]
    SizeGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
