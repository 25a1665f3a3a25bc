use thiserror::Error;

use crate::logic::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
    #[error("cannot ground a schema over an empty constant set")]
    EmptyDomain,
    #[error("rank {0} is outside [0, 1]")]
    RankOutOfRange(f64),
    #[error("`{0}` is not contingent")]
    NotContingent(String),
    #[error("rank 1 is reserved for tautologies and protected knowledge, not `{0}`")]
    MaximalRank(String),
    #[error("protected knowledge entails `{0}`, so it cannot be given up")]
    ProtectedConflict(String),
    #[error("keyword {0:?} does not occur in any judged document")]
    UnknownKeyword(String),
    #[error("no documents have been judged yet")]
    NoJudgments,
    #[error("document has no keywords")]
    EmptyDocument,
    #[error("invalid keyword {0:?}")]
    InvalidKeyword(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
