use thiserror::Error;

use crate::modelspace::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("unknown variable `{0}`")]
    VariableUnknown(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("map is not self-adjoint with respect to the metric")]
    NotSelfAdjoint,
    #[error("s must be at least 2, got {0}")]
    STooSmall(usize),
    #[error("frame does not span a spacelike or timelike plane")]
    NotDefinitePlane,
    #[error("frame vectors are linearly dependent")]
    DependentFrame,
    #[error("plane dimension k={0} is too small (need k >= 2)")]
    KTooSmall(usize),
    #[error("plane dimension k={k} exceeds the available index {index}")]
    KTooLarge { k: usize, index: usize },
    #[error("model has no auxiliary form")]
    NoAuxForm,
    #[error("metric is degenerate at the requested point")]
    DegenerateAtPoint,
    #[error("basis normalization failed: {0}")]
    NormalizationFailed(String),
    #[error("map is not an admissible isometric involution")]
    PhiNotAdmissible,
    #[error("metric is not positive definite")]
    NotRiemannian,
    #[error("bad variables: {0}")]
    BadVariables(String),
    #[error("invalid curvature tensor: {0}")]
    InvalidModel(Box<Violation>),
}
