use thiserror::Error;

/// Crate-wide error type. Input-validation variants carry enough context to
/// name the violated condition in diagnostics.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("painted node {painted} out of range for rank {rank}")]
    PaintedOutOfRange { painted: usize, rank: usize },

    #[error(
        "painting is not quasi-Hermitian: root {root:?} contains the painted \
         simple root with coefficient {coefficient}"
    )]
    NotQuasiHermitian { root: Vec<i64>, coefficient: i64 },

    #[error("spectrum is not admissible: pairing with cone generator {generator:?} is {value} (must be > 0)")]
    NotAdmissible { generator: Vec<i64>, value: String },

    #[error("chamber violation: {message}")]
    NotInChamber { message: String },

    #[error("trace violation: functional {functional:?} evaluates to {value} (must be 0)")]
    TraceViolation { functional: Vec<String>, value: String },

    #[error("rank must be at least 1")]
    RankZero,

    #[error("invalid Horn parameters: need 1 <= r < n, got n={n}, r={r}")]
    InvalidHornRange { n: usize, r: usize },

    #[error("operation requires a nonempty polyhedron")]
    EmptyPolyhedron,

    #[error("truncated region is unbounded along {direction:?}")]
    UnboundedTruncation { direction: Vec<String> },

    #[error("effective dimension {dim} exceeds the supported desk scale ({max})")]
    EffectiveDimTooLarge { dim: usize, max: usize },

    #[error("variable index {index} out of range for dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },

    #[error("cone must have no vertex besides the origin")]
    NotACone,

    #[error("result is not exact; this check requires an exact polytope")]
    NotExact,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by bad user input rather than internal failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Numerical(_))
    }
}
