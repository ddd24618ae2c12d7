use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid dimension {dim}: every subsystem needs at least 2 levels")]
    InvalidDimension { dim: usize },

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("tensor operands must be all matrices or all vectors")]
    MixedOperands,

    #[error("invalid density operator: {0}")]
    InvalidDensity(String),

    #[error("invalid state vector: norm {norm}")]
    InvalidState { norm: f64 },

    #[error("layout mismatch: expected {expected}, got {found}")]
    LayoutMismatch { expected: String, found: String },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("cascade depth {requested} exceeds the supported maximum {max}")]
    LayerOverflow { requested: usize, max: usize },

    #[error("report has {available} layers, {requested} requested")]
    InsufficientLayers { requested: usize, available: usize },

    #[error("config error in field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("numerical validation failed at T={t}: {message}")]
    Validation { t: f64, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
