use thiserror::Error;

/// Errors surfaced by corpus generation, file formats, the battery and the cipher.
#[derive(Debug, Error)]
pub enum Error {
    #[error("evolution too short: need {needed} rows, have {have}")]
    InsufficientRows { needed: usize, have: usize },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("corpus too short: need {needed} bits, have {have}")]
    CorpusTooShort { needed: usize, have: usize },

    #[error("aggregation needs at least 2 p-values, got {0}")]
    TooFewSamples(usize),

    #[error("degenerate cipher key: {0}")]
    DegenerateKey(String),

    #[error("malformed {what}: {detail}")]
    Format { what: &'static str, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
