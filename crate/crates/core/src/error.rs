use thiserror::Error;

/// Errors raised by structure loading, validation and the constructions.
///
/// The variants map onto the three failure classes the command line
/// distinguishes: bad input, a set that is not closed under an operation,
/// and a request that exceeds the desk-scale resource caps.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("input error: {0}")]
    Input(String),
    #[error("closure error: {op}({left}, {right}) = {result} escapes the subset")]
    Closure {
        op: &'static str,
        left: usize,
        right: usize,
        result: usize,
    },
    #[error("axiom `{axiom}` violated at {witness:?}")]
    Axiom { axiom: String, witness: Vec<usize> },
    #[error("resource error: {0}")]
    Resource(String),
}

impl AlgebraError {
    pub fn input(msg: impl Into<String>) -> Self {
        AlgebraError::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        AlgebraError::Resource(msg.into())
    }

    /// True for errors that come from exceeding a size cap rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, AlgebraError::Resource(_))
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
