use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid chain parameters: {0}")]
    InvalidParams(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("qubit index {k} outside 1..={n_qubits}")]
    QubitIndex { k: usize, n_qubits: usize },

    #[error("dense oracle refuses {n_qubits} qubits (limit {limit})")]
    DimensionGuard { n_qubits: usize, limit: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator is not Hermitian (max |H - H^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("negative time s = {0}")]
    NegativeTime(f64),

    #[error("Bessel evaluation outside supported envelope: order {order}, z = {z}")]
    BesselEnvelope { order: usize, z: f64 },

    #[error("radicand {radicand:e} is negative beyond round-off at k = {k}, s = {s}")]
    NegativeRadicand { k: usize, s: f64, radicand: f64 },

    #[error("precision backend error: {0}")]
    Precision(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("threshold {threshold} not reached at k = {k} before s = {horizon}")]
    ThresholdUnreachable { k: usize, threshold: f64, horizon: f64 },

    #[error("threshold {threshold} must lie in (0, {saturation})")]
    ThresholdOutOfRange { threshold: f64, saturation: f64 },

    #[error("window end s = {s_end} exceeds reflection horizon {horizon} at k = {k}")]
    HorizonExceeded { k: usize, s_end: f64, horizon: f64 },

    #[error("invalid fit range: {0}")]
    FitRange(String),
}

impl Error {
    /// True for errors caused by malformed input rather than a numeric guard.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParams(_)
                | Error::InvalidGrid(_)
                | Error::QubitIndex { .. }
                | Error::FitRange(_)
                | Error::DimensionMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
