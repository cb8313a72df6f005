//! Error types. Vertex and row/column indices carried by errors are 1-based.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational literal `{0}`")]
    Rational(String),
    #[error("invalid Laurent polynomial `{input}`: {reason}")]
    Polynomial { input: String, reason: String },
    #[error("invalid matrix: {0}")]
    Matrix(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is empty")]
    Empty,
    #[error("diagonal entry ({0},{0}) is not 2")]
    DiagonalNotTwo(usize),
    #[error("off-diagonal entry ({0},{1}) is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("entry ({0},{1}) is zero but ({1},{0}) is not")]
    ZeroPatternAsymmetric(usize, usize),
    #[error("matrix is decomposable; split it into components first")]
    Decomposable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("rank mismatch: {left} variables vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("not a unit: only nonzero single-term Laurent polynomials are invertible")]
    NotAUnit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionError {
    #[error("matrix is {got}x{got}, expected {expected}x{expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("diagonal entry A({0},{0}) is zero")]
    ZeroDiagonal(usize),
    #[error("normalized entry A'({0},{1}) is neither 0 nor -1")]
    BadNormalizedEntry(usize, usize),
    #[error("A'({0},{1}) + A'({1},{0}) does not equal n({1},{0})")]
    SumMismatch(usize, usize),
    #[error("A'({0},{1}) = -1 but row {0} or column {1} has another -1 at index {2}")]
    ExclusionViolated(usize, usize, usize),
    #[error("scale factor {0} is zero")]
    ZeroScale(usize),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("unsupported Cartan type {0}: only A_r and affine A_(r-1) admit representations")]
    UnsupportedType(String),
    #[error("index n_{0} is zero")]
    ZeroIndex(usize),
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Solution(#[from] SolutionError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("loop checks need an affine A_(r-1) representation")]
    NotAffine,
    #[error("bracket closure exceeded dimension bound {bound}")]
    ClosureDiverged { bound: usize },
    #[error("[X_phi, X_-phi] is not a nonzero multiple of F(H_phi)")]
    NormalizationImpossible,
    #[error("F(X_0) is not a unit multiple of X_-phi")]
    NotProportional,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("rank {0} exceeds the exhaustive search bound of 8")]
    TooLarge(usize),
    #[error("diagonal entry ({0},{0}) is zero")]
    ZeroDiagonal(usize),
    #[error("B({1},{0})/B({0},{0}) differs from A({0},{1})/A({1},{1})")]
    IdentityViolated(usize, usize),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Solution(#[from] SolutionError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}
