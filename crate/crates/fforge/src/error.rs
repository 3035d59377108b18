use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Core(#[from] fforge_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error(
        "census mismatch for n={n}: got ({got_trees}, {got_violations}), expected ({want_trees}, {want_violations})"
    )]
    FixtureMismatch { n: usize, got_trees: usize, got_violations: usize, want_trees: usize, want_violations: usize },
}

impl Error {
    /// 0 success, 1 usage/input, 2 numerical failure, 3 fixture mismatch.
    pub fn exit_code(&self) -> u8 {
        use fforge_core::Error as C;
        match self {
            Error::Core(C::ConvergenceFailure { .. } | C::NoRoot | C::StructureViolation(_)) => 2,
            Error::FixtureMismatch { .. } => 3,
            _ => 1,
        }
    }
}
