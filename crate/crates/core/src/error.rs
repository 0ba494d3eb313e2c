use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse scalar {0:?}")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} against {right:?}")]
    Dimension {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is not Hermitian")]
    NotHermitian,
}

/// Failures of constructions and solvers. Failed axiom checks are not errors; they are
/// report entries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("window must contain the identity and be closed under inverses: {0}")]
    BadWindow(String),
    #[error("operation needs a finite group")]
    InfiniteGroup,
    #[error("{0} has no *-operation")]
    StarAbsent(String),
    #[error("functional is not faithful: {0}")]
    NotFaithful(String),
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("solution is not unique: {0}")]
    NotUnique(String),
    #[error("action is not admissible: {0}")]
    NotAdmissible(String),
    #[error("action is not a crossing: {0}")]
    NotCrossing(String),
    #[error("unsupported structure: {0}")]
    Unsupported(String),
    #[error("pairing invalid: {0}")]
    Pairing(String),
    #[error("twist map routes disagree: {0}")]
    TwistMismatch(String),
    #[error("involutivity of the double's *-operation fails: {0}")]
    StarInvolutivity(String),
    #[error("element does not belong to this algebra: {0}")]
    ForeignElement(String),
    #[error("functional is not an integral: {0}")]
    NotIntegral(String),
    #[error("map is not invertible: {0}")]
    Singular(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
