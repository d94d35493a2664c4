use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("matrix is not symmetric (residual {residual:.3e})")]
    NotSymmetric { residual: f64 },
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("decomposition failed: reconstruction residual {residual:.3e}")]
    DecompositionFailed { residual: f64 },
    #[error("vector {0:?} violates x1 >= x2 >= |x3|")]
    NotOrdered([f64; 3]),
    #[error("vector {0:?} is not in the canonical cell")]
    NotCanonical([f64; 3]),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("gate {0:?} lies outside the region l1 + |l3| <= pi/4")]
    OutsideRegion([f64; 3]),
    #[error("interaction strength must be positive, got {0}")]
    NonPositiveStrength(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
