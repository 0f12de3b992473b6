use std::path::PathBuf;

/// Errors produced while building codes, trellises, or running decoders.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    #[error("matrix is not full row rank (rank {rank}, rows {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("row space of the smaller basis is not contained in the larger one (row {row})")]
    NotNested { row: usize },

    #[error("parity-check matrix has no rows or no columns")]
    EmptyMatrix,

    #[error(
        "trellis too large: level {level} has more than {limit} states; \
         use a smaller code or a parity-check matrix with fewer rows"
    )]
    TrellisTooLarge { level: isize, limit: usize },

    #[error("enumeration guard exceeded: 2^{dimension} exceeds the limit of 2^{limit}")]
    EnumerationGuard { dimension: usize, limit: usize },

    #[error("no branch with label {label} leaves state at level {level}")]
    NoSuchBranch { level: isize, label: u8 },

    #[error("state not present in trellis at level {level}")]
    UnknownState { level: isize },

    #[error("negative reliability weight {0}")]
    NegativeWeight(f64),

    #[error("search ended without reaching the final level; the trellis is inconsistent")]
    SearchExhausted,

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error stems from user input (bad flags, files, or code
    /// parameters) rather than an internal failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::SearchExhausted | Error::Csv(_) | Error::Json(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
