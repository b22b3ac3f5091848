use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("negative argument {0}")]
    NegativeArgument(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("mismatched Cartan datum")]
    DatumMismatch,
    #[error("word not reduced: {0:?}")]
    NotReduced(Vec<usize>),
    #[error("vertex {0} is not in the diagram")]
    BadVertex(usize),
    #[error("weight {0:?} exceeds the configured height bound {1}")]
    HeightBound(Vec<i64>, usize),
    #[error("zero element has no crystal data")]
    ZeroElement,
    #[error("convention error: {0}")]
    Convention(String),
    #[error("not a lattice element: {0}")]
    NotLattice(String),
    #[error("not congruent to a basis vector: {0}")]
    NotCongruent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a module: {0}")]
    NotModule(String),
    #[error("no complement found")]
    NoComplement,
    #[error("exchange validation failed: {0}")]
    ExchangeValidation(String),
    #[error("general C_w membership not implemented")]
    UnsupportedCw,
    #[error("unsupported type {0}")]
    UnsupportedType(String),
    #[error("index {0} is frozen")]
    Frozen(usize),
    #[error("not quasi-commuting")]
    NotQuasiCommuting,
    #[error("seed validation failed: {0}")]
    SeedValidation(String),
    #[error("division has no solution")]
    NoSolution,
    #[error("non-unique solution")]
    NonUnique,
    #[error("result not dual canonical: {0}")]
    NotDualCanonical(String),
    #[error("io: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

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
