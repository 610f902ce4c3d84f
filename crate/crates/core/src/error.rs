use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum HdxError {
    #[error("maximal faces have mixed sizes ({0} and {1}); complex is not pure")]
    Purity(usize, usize),
    #[error("vertex {vertex} out of range for a complex on {n} vertices")]
    Index { vertex: usize, n: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("face {0:?} is not in the complex")]
    MissingFace(Vec<u32>),
    #[error("exact computation unavailable: {size} exceeds the exhaustive cap {cap}")]
    ExactnessUnavailable { size: usize, cap: usize },
    #[error("input of size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("graph is not regular")]
    Regularity,
    #[error("complex is not pure; face {0:?} lies in no top cell")]
    NotPure(Vec<u32>),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("unknown affine type {0}")]
    UnknownType(String),
    #[error("function is not orthogonal to constants (or bipartite sign); projection {0:e}")]
    NotInL200(f64),
    #[error("{d}+1 does not divide n = {n}")]
    Divisibility { n: usize, d: usize },
    #[error("greedy stage aborted after {attempts} attempts: no legal cell left")]
    AbortedGreedy { attempts: usize },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, HdxError>;
