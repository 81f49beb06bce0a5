use thiserror::Error;

use crate::fock::Statistics;

/// Errors produced by the simulator.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An occupation pair does not exist in the chosen basis.
    #[error("occupation ({n1}, {n2}) is outside the {statistics} basis")]
    OccupationOutOfRange {
        statistics: Statistics,
        n1: u32,
        n2: u32,
    },

    /// An operation is only defined for one kind of statistics.
    #[error("{operation} is not supported for {statistics} statistics")]
    UnsupportedStatistics {
        operation: &'static str,
        statistics: Statistics,
    },

    /// Two inputs were built over different statistics.
    #[error("statistics mismatch: {left} vs {right}")]
    StatisticsMismatch { left: Statistics, right: Statistics },

    /// A matrix or vector has the wrong dimension for the chosen basis.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A state vector's norm exceeds 1 beyond tolerance.
    #[error("state vector norm {norm} exceeds 1; only sub-normalized conditional branches are permitted")]
    NotNormalizable { norm: f64 },

    /// A density matrix violates Hermiticity, unit trace or positivity.
    #[error("not a valid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    /// A measurement protocol fails validation.
    #[error("invalid Zeno protocol: {reason}")]
    InvalidProtocol { reason: String },

    /// An absorption model fails validation.
    #[error("invalid absorption model: {reason}")]
    InvalidModel { reason: String },

    /// A physical map sends a logical basis state outside the logical
    /// subspace by more than the caller's tolerance.
    #[error(
        "physical map leaks the logical subspace: max leakage {max_leakage:.3e} exceeds \
         tolerance {tolerance:.3e} (per-input leakage {leakage:?})"
    )]
    NonLogicalMap {
        leakage: [f64; 4],
        max_leakage: f64,
        tolerance: f64,
    },

    /// A serialized gate could not be parsed.
    #[error("malformed gate matrix text: {reason}")]
    MalformedGateText { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
