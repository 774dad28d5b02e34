use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("qubit index {index} out of range for {n_qubits} qubit(s)")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("Bloch vector too long: |s| = {0}")]
    BlochVectorTooLong(f64),

    #[error("Kraus set is not trace preserving: completeness residual {0:e}")]
    NotTracePreserving(f64),

    #[error("channel is not phase covariant: residual {0:e}")]
    NotPhaseCovariant(f64),

    #[error("effective single-qubit action is not completely positive: min eigenvalue {0:e}")]
    NotCompletelyPositive(f64),

    #[error("{got} quadrature node(s), need at least {need}")]
    TooFewNodes { got: usize, need: usize },

    #[error("invalid copy count n = {0}: need n >= 1")]
    InvalidN(u64),

    #[error("invalid ensemble size l = {0}: need l >= 1")]
    InvalidL(u64),

    #[error("invalid copy range: {0}")]
    InvalidRange(String),

    #[error("infeasible point: a^2 + c^2 exceeds 1 by {0:e}")]
    InfeasiblePoint(f64),

    #[error("optimization did not converge within {0} objective evaluations")]
    NotConverged(u64),

    #[error("normalization violated: residual {0:e}")]
    NormalizationViolated(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
