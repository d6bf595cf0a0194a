use thiserror::Error;

/// Errors raised by the thermodynamic model and the link simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} out of domain: {value}")]
    Domain { name: &'static str, value: f64 },

    #[error("temperature is undefined for an empty mode or zero entropy")]
    UndefinedTemperature,

    #[error("insufficient data: block order {order} exceeds sequence length {length}")]
    InsufficientData { order: usize, length: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid pulse train: {0}")]
    InvalidTrain(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("simulation failed at stage {stage}: {reason}")]
    Simulation { stage: usize, reason: String },

    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64) -> Error {
    Error::Domain { name, value }
}
