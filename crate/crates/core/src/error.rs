//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by geometric primitives, constructions and reports.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A clip or construction produced a region with no interior.
    #[error("empty intersection: {0}")]
    EmptyIntersection(String),

    /// Parameter outside the documented domain of an operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// A point expected in the interior of a body lies outside it.
    #[error("point outside body: {0}")]
    OutsideBody(String),

    /// An affine map with |det| below the singularity threshold.
    #[error("singular affine map: |det| = {0:e}")]
    SingularMap(f64),

    /// A construction requiring origin symmetry got an asymmetric body.
    #[error("body is not origin-symmetric: asymmetry {0:e}")]
    NotSymmetric(f64),

    /// A family member shrank to nothing.
    #[error("construction produced an empty body: {0}")]
    EmptyBody(String),

    /// The requested sublevel region is empty.
    #[error("empty region: {0}")]
    EmptyRegion(String),

    /// A root bracket could not be established.
    #[error("bracket failure: {0}")]
    BracketError(String),

    /// Shell integrals require the origin inside the inner body.
    #[error("origin outside inner body")]
    OriginOutside,

    /// Shell integrals require nested bodies.
    #[error("bodies are not nested: {0}")]
    NotNested(String),

    /// The rolling-radius measure bound requires the unit disk inside the body.
    #[error("body does not contain the unit disk: deficit {0:e}")]
    NotContainingUnitBall(f64),

    /// A body specification violated a named invariant.
    #[error("invalid body: {0}")]
    InvalidBody(String),
}

pub type Result<T> = std::result::Result<T, Error>;
