use thiserror::Error;

/// Errors raised by state construction, the Bell toolkit, measurement and the protocol.
#[derive(Debug, Error)]
pub enum Error {
    #[error("bit sequence is empty")]
    EmptyBits,
    #[error("invalid bit value {0}, expected 0 or 1")]
    InvalidBit(u8),
    #[error("{requested} qubits exceeds the qubit cap of {cap}")]
    QubitCap { requested: usize, cap: usize },
    #[error("expected {expected} amplitudes, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid qubit permutation: {0}")]
    InvalidPermutation(String),
    #[error("qubit {qubit} out of range 1..={n_qubits}")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("Bell label {0} outside 1..=4")]
    InvalidLabel(i64),
    #[error("cross Bell index must contain at least one label")]
    EmptyIndex,
    #[error("expected an even qubit count, got {0}")]
    OddQubitCount(usize),
    #[error("invalid measurement plan: {0}")]
    InvalidPlan(String),
    #[error("outcome {outcome} has probability {probability:e}")]
    ZeroProbability { outcome: String, probability: f64 },
    #[error("malformed classical message: {0}")]
    MalformedMessage(String),
    #[error("correction table derivation failed: {0}")]
    DerivationFailed(String),
    #[error("unsupported size: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
