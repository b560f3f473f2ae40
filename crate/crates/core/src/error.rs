use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("involution {0} does not apply to ring {1}")]
    InvolutionMismatch(String, String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("involutions do not commute")]
    NotCommuting,
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("parameter not in the declared class: {0}")]
    NotInPiece(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("symmetry class mismatch: {0}")]
    SymmetryClass(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("space not closed under the product at basis triple {0:?}")]
    NotClosed(Vec<usize>),
    #[error("triple system fails the axioms: {0}")]
    AxiomFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
