use thiserror::Error;

/// Errors produced by parsing, validation, and the aggregation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty ranking text")]
    EmptyRanking,

    #[error("comment line is not a ranking")]
    CommentAsRanking,

    #[error("empty rank at byte {pos}")]
    EmptyRank { pos: usize },

    #[error("unclosed `[` at byte {pos}")]
    UnclosedBracket { pos: usize },

    #[error("invalid token `{token}` at byte {pos}: {reason}")]
    InvalidToken {
        token: String,
        pos: usize,
        reason: &'static str,
    },

    #[error("participant `{token}` appears more than once")]
    DuplicateParticipant { token: String },

    #[error("universe is empty")]
    EmptyUniverse,

    #[error("duplicate universe token `{token}`")]
    DuplicateUniverseToken { token: String },

    #[error("participant `{token}` is not in the universe")]
    OutsideUniverse { token: String },

    #[error("pair needs two distinct participants, got `{token}` twice")]
    IdenticalPair { token: String },

    #[error("no rankings given")]
    NoRankings,

    #[error("relation element `{token}` is outside the element set")]
    UnknownElement { token: String },

    #[error("relation contains the self-pair ({token}, {token})")]
    SelfPair { token: String },

    #[error("cycle left in relation: no undominated element among the remaining {remaining}")]
    CycleDetected { remaining: usize },

    #[error("no responses to average")]
    EmptyLikert,

    #[error("{file}: {detail}")]
    Data { file: String, detail: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn data(file: &str, detail: impl Into<String>) -> Self {
        Error::Data {
            file: file.to_string(),
            detail: detail.into(),
        }
    }
}
