use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus (need a prime below 65536)")]
    UnsupportedModulus(u64),
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry {value} is not a residue of GF({p})")]
    EntryOutOfRange { value: u64, p: u32 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot factor the zero polynomial")]
    FactorZero,
    #[error("polynomial degree {degree} exceeds the factorisation cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("trial-division search over GF({p}) at degree {degree} is too large")]
    FactorSearchTooLarge { p: u32, degree: usize },
    #[error("polynomial matrix has zero determinant")]
    Singular,
    #[error("operator of size {size} exceeds the oracle cap of {cap}")]
    OracleCap { size: usize, cap: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("malformed graph spec `{0}`")]
    GraphSpec(String),
    #[error("{path}:{line}:{column}: {message}")]
    GraphFile {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("polynomial parse error at column {column}: {message}")]
    PolyParse { column: usize, message: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}
