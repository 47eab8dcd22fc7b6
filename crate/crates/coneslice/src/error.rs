//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("hyperplane is not admissible for the cone (some (b, e_i) <= {floor:.1e})")]
    NotAdmissible { floor: f64 },

    #[error("point is not on the hyperplane: |(b,x) - 1| = {gap:.3e}")]
    PointNotOnPlane { gap: f64 },

    #[error("point is not interior to the cone")]
    NotInterior,

    #[error("point is not on the cone boundary")]
    NotBoundary,

    #[error("point coincides with the cone vertex")]
    VertexPoint,

    #[error("argument {x} below the domain boundary {min}")]
    OutOfDomain { x: f64, min: f64 },

    #[error("plane is not stationary for the point (residual {residual:.3e})")]
    NotStationary { residual: f64 },

    #[error("no admissible hyperplane passes through the point")]
    NoAdmissiblePlane,

    #[error("face angles do not define a cone: {0}")]
    InfeasibleAngles(String),

    #[error(
        "solver did not converge after {iterations} iterations \
         (best residual {best_residual:.3e}, best volume {best_volume:.6e})"
    )]
    NoConvergence {
        iterations: usize,
        best_residual: f64,
        best_volume: f64,
        best_normal: Vec<f64>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error envelope.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Degenerate(_) => "Degenerate",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::PointNotOnPlane { .. } => "PointNotOnPlane",
            Error::NotInterior => "NotInterior",
            Error::NotBoundary => "NotBoundary",
            Error::VertexPoint => "VertexPoint",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::NotStationary { .. } => "NotStationary",
            Error::NoAdmissiblePlane => "NoAdmissiblePlane",
            Error::InfeasibleAngles(_) => "InfeasibleAngles",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for errors about the problem posed (valid syntax, impossible
    /// geometry); false for malformed input. The CLI maps the former to exit
    /// code 2 and the latter to exit code 1.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::InvalidInput(_) | Error::DimensionMismatch { .. }
        )
    }
}
