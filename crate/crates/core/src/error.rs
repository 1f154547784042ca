use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,

    #[error("malformed PD input near `{token}`: {reason}")]
    MalformedSyntax { token: String, reason: String },

    #[error("edge label {label} occurs {count} times (expected exactly 2)")]
    BadEdgeMultiplicity { label: u32, count: usize },

    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),

    #[error("{n} crossings exceeds the cube cap of {cap}")]
    CubeTooLarge { n: usize, cap: usize },

    #[error("face limit {limit} exceeded ({enumerated} faces enumerated, {vertices} vertices)")]
    TooManyFaces {
        limit: usize,
        enumerated: usize,
        vertices: usize,
    },

    #[error("not a cochain complex: d^{} . d^{} != 0", degree + 1, degree)]
    NotAComplex { degree: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
