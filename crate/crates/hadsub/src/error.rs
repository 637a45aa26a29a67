use thiserror::Error;

/// Errors reported by matrix construction, verification and analysis.
///
/// Verification failures carry enough context to name the first violated
/// constraint and the worst offending entry, so callers can print a useful
/// diagnostic without re-deriving anything.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows but row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },

    #[error("matrix size {n} is not supported ({reason})")]
    UnsupportedSize { n: usize, reason: String },

    #[error("entry ({i},{j}) is not finite")]
    NonFinite { i: usize, j: usize },

    #[error("entry ({i},{j}) has modulus {modulus:.6e}, out of tolerance {tol:.1e} from 1")]
    NotUnimodular { i: usize, j: usize, modulus: f64, tol: f64 },

    #[error("rows {row_a} and {row_b} are not orthogonal: |<r{row_a},r{row_b}>| = {magnitude:.6e} exceeds {tol:.1e}")]
    RowsNotOrthogonal { row_a: usize, row_b: usize, magnitude: f64, tol: f64 },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("family `{family}` takes {expected} parameter(s), got {got}")]
    ParamArity { family: String, expected: usize, got: usize },

    #[error("invalid parameter for family `{family}`: {reason}")]
    InvalidParam { family: String, reason: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("ambient matrix size {size} exceeds the configured limit {limit} (pass force to override)")]
    SizeLimit { size: usize, limit: usize },

    #[error("rank decision is ambiguous: eigenvalue gap {gap:.2e} is within a factor 10 of the zero threshold")]
    AmbiguousRank { gap: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
