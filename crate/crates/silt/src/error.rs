use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix entries come from different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("algebra is not finite-dimensional: new basis paths still appear at length {cap}")]
    NotFiniteDimensional { cap: usize },

    #[error("relation is not admissible: {0}")]
    NonAdmissible(String),

    #[error("arrow map does not preserve the relations: {0}")]
    RelationNotPreserved(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("resolution exceeds maximum length {max}")]
    ResolutionTooLong { max: usize },

    #[error("spherical certificate is invalid: {0}")]
    InvalidCertificate(String),

    #[error("effort budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("chain map does not commute with the differentials (degree {degree})")]
    NonCommutingChainMap { degree: i32 },

    #[error("objects belong to different algebras")]
    AlgebraMismatch,

    #[error("automorphism must fix every vertex")]
    NonVertexFixing,

    #[error("prime {p} is too small for a trusted radical computation (need p > {dim})")]
    PrimeTooSmall { p: u64, dim: usize },

    #[error("invalid summand selection: {0}")]
    InvalidSelection(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("operation requires a quiver-presented algebra")]
    NoPresentation,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
