use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// `RankMismatch` covers operands living in free groups of different rank
/// and `LetterOutOfRange` a letter whose generator index exceeds the ambient
/// rank. `UnsupportedRank` marks operations defined only in some ranks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at token {token:?}: {reason}")]
    Syntax { token: String, reason: &'static str },

    #[error("rank mismatch: expected rank {expected}, found rank {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("generator index {index} out of range for rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },

    #[error("word length {len} exceeds the configured limit of {limit} letters")]
    LengthLimit { len: usize, limit: usize },

    #[error("supplied inverse does not invert the map: {0}")]
    NotInverse(String),

    #[error("automorphism is not an involution")]
    NotInvolution,

    #[error("automorphism is not a soft involution")]
    NotSoftInvolution,

    #[error("rank minus trace is odd ({0}); input is not a soft involution")]
    Parity(i64),

    #[error("search budget exhausted after {explored} nodes (limit {limit})")]
    Budget { explored: usize, limit: usize },

    #[error("element is not sent to its inverse by the involution")]
    NotInverted,

    #[error("element is not primitive")]
    NotPrimitive,

    #[error("canonical data passes the necessary condition; no witness applies")]
    NotApplicable,

    #[error("commutes with the whole sample but certificate verification failed (sample size {sample_size})")]
    SampleInconclusive { sample_size: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("rank {rank} unsupported: {requirement}")]
    UnsupportedRank {
        rank: usize,
        requirement: &'static str,
    },

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("invalid JSON input: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
