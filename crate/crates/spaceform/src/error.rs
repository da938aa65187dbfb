//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty span")]
    EmptySpan,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("basis is not orthonormal (gram residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },

    #[error("operator restriction is not self-adjoint on the span (residual {residual:.3e})")]
    NotSelfAdjoint { residual: f64 },

    #[error("operator does not map the span into itself (residual {residual:.3e})")]
    NotInvariant { residual: f64 },

    #[error("metric is not symmetric positive definite")]
    NotPositiveDefinite,

    #[error("vector is not in the span (residual {residual:.3e})")]
    NotInSpan { residual: f64 },

    #[error("xi not tangent")]
    XiNotTangent,

    #[error("second fundamental form has wrong shape: expected {expected}, got {got}")]
    SffShape { expected: String, got: String },

    #[error("second fundamental form is not symmetric at (i={i}, j={j}, k={k})")]
    SffAsymmetric { i: usize, j: usize, k: usize },

    #[error("normal index {index} out of range (have {count} normals)")]
    NormalIndexOutOfRange { index: usize, count: usize },

    #[error("input vector is not tangent (normal residual {residual:.3e})")]
    NotTangent { residual: f64 },

    #[error("distribution split required for this form")]
    MissingSplit,

    #[error("theorem hypothesis violated: submanifold is not minimal for this connection")]
    NotMinimal,

    #[error("submanifold is not totally geodesic for this connection")]
    NotTotallyGeodesic,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
