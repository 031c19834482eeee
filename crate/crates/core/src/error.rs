use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no rank")]
    ZeroPolynomial,
    #[error("polynomial has degree {degree}, need at least {required}")]
    DegreeTooLow { degree: usize, required: usize },
    #[error("stability parameter is eventually negative")]
    NegativeParameter,
    #[error("stability parameter has degree {degree}, must be below dim X = {dim_x}")]
    ParameterDegreeTooHigh { degree: usize, dim_x: usize },
    #[error("stability parameter has degree {degree}, must be at least dim X = {dim_x}")]
    ParameterDegreeTooLow { degree: usize, dim_x: usize },
    #[error("the framing homomorphism is trivial")]
    TrivialFraming,
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("record {record} has no section count at m = {m}")]
    MissingSectionCount { record: usize, m: i64 },
    #[error("rank must be positive")]
    NonPositiveRank,
    #[error("denominator vanishes: {0}")]
    ZeroDenominator(&'static str),
    #[error("malformed weight vector: {0}")]
    MalformedWeightVector(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("no subspace records supplied")]
    EmptySubspaces,
    #[error("the pair is unstable")]
    PairUnstable,
    #[error("subobject lattice cannot realize a Jordan-Hölder chain below {level}: {detail}")]
    LatticeInsufficient { level: String, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
