use thiserror::Error;

/// Errors raised by the exact kernels and the constructions built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("zero pivot entry at ({row}, {col})")]
    ZeroPivot { row: usize, col: usize },

    #[error("index {index} out of range (len {len})")]
    Index { index: usize, len: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("row {row} is not essentially 0,±1")]
    NotEssentiallyPm1 { row: usize },

    #[error("rows are linearly dependent (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("not totally equimodular; failing row subset {witness:?}")]
    NotTotallyEquimodular { witness: Vec<usize> },

    #[error("bricks are not mutually totally unimodular; violating rows {witness:?}")]
    NotMutuallyTu { witness: Vec<usize> },

    #[error("rows {rows:?} do not form a te-brick")]
    NotABrick { rows: Vec<usize> },

    #[error("vector lies outside the cone")]
    OutsideCone,

    #[error("expected {expected}, found {found}")]
    WrongKind { expected: String, found: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
