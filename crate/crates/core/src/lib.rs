//! Calculus of linear relations on finite-dimensional complex Hilbert spaces.
//!
//! A linear relation from C^n to C^n is a subspace of C^n x C^n; it may be
//! multivalued (a "vertical" component sends 0 to nonzero values) and need not
//! be densely defined.  This crate provides exact-arithmetic-free but
//! rank-tolerant machinery for working with them:
//!
//! - [`subspace`]: orthonormal-basis subspace arithmetic (sums, intersections,
//!   complements, the opening metric),
//! - [`relation`]: relations as graph subspaces, with adjoints, inverses,
//!   componentwise and operatorwise sums, products, and scalar actions,
//! - [`decompose`]: canonical, componentwise, orthogonal, and Cartesian
//!   decompositions into operator and multivalued parts,
//! - [`classify`]: predicates (symmetric, selfadjoint, dissipative, ...,
//!   maximality within a class) over relations,
//! - [`spectral`]: eigenvalues of the graph pencil, lower bounds c(lambda),
//!   defect numbers, and numerical-range sampling with a constructive
//!   convexity witness,
//! - [`laws`]: a seeded, randomized suite that machine-checks the algebraic
//!   laws the rest of the crate relies on,
//! - [`cli`]: a small expression language and text file format exposing all
//!   of the above from the command line.

use num_complex::Complex64;
use thiserror::Error;

pub mod classify;
pub mod cli;
pub mod decompose;
pub mod laws;
pub(crate) mod numeric;
pub mod relation;
pub mod spectral;
pub mod subspace;

#[cfg(test)]
pub(crate) mod testutil;

pub use classify::Class;
pub use relation::Relation;
pub use subspace::Subspace;

/// Column-major complex matrix used throughout.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
/// Complex column vector.
pub type CVector = nalgebra::DVector<Complex64>;

/// Threshold on the opening (gap) metric under which two subspaces are
/// considered equal, and the floor for residual-based membership tests.
pub const EQ_TOL: f64 = 1e-8;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Ambient or Hilbert-space dimension 0 was requested.
    #[error("ambient dimension must be at least 1")]
    ZeroAmbient,

    /// Vector length or ambient dimension differs from what the operation
    /// requires.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The columns handed to an embedding are not orthonormal.
    #[error("embedding columns are not an isometry (||V^H V - I|| = {defect:.3e})")]
    NotAnIsometry { defect: f64 },

    /// A Cartesian decomposition was requested for a relation whose domain is
    /// not contained in the domain of its adjoint.  The witness lies in the
    /// domain but not in the adjoint's domain.
    #[error("relation is not formally domain tight; a witness domain vector is attached")]
    NotFormallyDomainTight { witness: Vec<Complex64> },

    /// An orthogonal operator/multivalued splitting was requested but the
    /// domain is not orthogonal to the multivalued part.  The witness is a
    /// domain vector with a nonzero component inside mul A.
    #[error("no orthogonal decomposition: domain is not orthogonal to the multivalued part")]
    NotOrthogonallyDecomposable { witness: Vec<Complex64> },

    /// `is_maximal` was asked about a class the relation does not belong to.
    #[error("relation is not {class} to begin with")]
    ClassMismatch { class: String },

    /// A tightness question about an extension pair was asked, but the
    /// embedded relation is not contained in the candidate extension.
    #[error("embedded relation is not contained in the candidate extension")]
    NotAnExtension,

    /// Sector half-angle outside the open interval (0, pi/2).
    #[error("sector angle {alpha} is outside (0, pi/2)")]
    InvalidAngle { alpha: f64 },

    /// Value applied outside the domain of an operator part.
    #[error("vector lies outside the domain")]
    OutsideDomain,

    /// A spectral estimate or witness was requested outside its guaranteed
    /// parameter region.
    #[error("precondition violated: {msg}")]
    Precondition { msg: String },

    /// The two sampled numerical-range values coincide, so there is no
    /// segment to parametrize.
    #[error("numerical-range segment is degenerate: endpoint values coincide")]
    DegenerateSegment,

    /// The witness bisection failed to reach its residual target.
    #[error("bisection failed to converge (residual {residual:.3e})")]
    Bisection { residual: f64 },

    /// A random-relation profile cannot be realized with the given
    /// parameters.
    #[error("infeasible generator profile: {reason}")]
    InfeasibleProfile { reason: String },

    /// Law id not present in the registry.
    #[error("unknown law id {id:?}")]
    UnknownLaw { id: String },

    /// Expression-language syntax error.
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Expression evaluated to the wrong kind of value.
    #[error("type error: {msg}")]
    TypeMismatch { msg: String },

    /// Name not bound in the current environment.
    #[error("unknown name {name:?}")]
    UnknownName { name: String },

    /// Definition-file format violation.
    #[error("format error on line {line}: {msg}")]
    Format { line: usize, msg: String },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
