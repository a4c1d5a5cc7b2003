use std::path::PathBuf;

/// Errors raised by the simulator.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Two signals that must share a time axis do not.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A value lies outside the range an operation can evaluate.
    #[error("out of range: {0}")]
    Range(String),

    /// Parameters violate an invariant of the configuration.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// Bit or sample counts do not line up with the symbol structure.
    #[error("framing error: {0}")]
    Framing(String),

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The narrowband-FM expansion was requested outside its validity range.
    #[error("narrowband approximation invalid: modulation index {mu:.4} exceeds {limit}")]
    ApproximationDomain { mu: f64, limit: f64 },

    #[error("empty report: {0}")]
    EmptyReport(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    /// A pipeline stage failed; wraps the underlying error.
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error at {}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("CSV error at {}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// True when the error stems from invalid user configuration rather than
    /// a failure while running a valid one.
    pub fn is_config_error(&self) -> bool {
        match self {
            Error::Configuration(_)
            | Error::UnknownPreset(_)
            | Error::ApproximationDomain { .. } => true,
            Error::Json { source, .. } => !source.is_io(),
            Error::Stage { source, .. } => source.is_config_error(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
