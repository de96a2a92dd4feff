use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter index {index} out of range for rank {rank}")]
    LetterOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("the identity does not define a curve")]
    IdentityClass,

    #[error("cannot parse word {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("generating set is empty")]
    EmptySet,

    #[error("generator {generator} not reached within word length {budget}")]
    NotGenerating { generator: String, budget: u32 },

    #[error("memory budget exceeded: need about {needed} bytes, cap is {cap}")]
    MemoryBudgetExceeded { needed: u64, cap: u64 },

    #[error("length budget {budget} exceeded")]
    BudgetExceeded { budget: u32 },

    #[error("surface (g={genus}, r={boundary}) violates 3g + r > 3")]
    HypothesisViolated { genus: u32, boundary: u32 },

    #[error("closed surfaces (r = 0) are not supported")]
    ClosedSurfaceUnsupported,

    #[error("no built-in mapping class generators for (g={genus}, r={boundary}); supply an automorphism file")]
    UnsupportedSignature { genus: u32, boundary: u32 },

    #[error("invalid automorphism {name:?}: {reason}")]
    InvalidAutomorphism { name: String, reason: String },

    #[error("curve {word} is not essential")]
    NotEssential { word: String },

    #[error("not enough data: {0}")]
    InsufficientData(String),

    #[error("series mismatch: {0}")]
    ConfigMismatch(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
