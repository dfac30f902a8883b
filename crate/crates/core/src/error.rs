use thiserror::Error;

/// Errors raised by the algebraic routines.
///
/// Parse failures are kept distinct from domain failures so front ends can
/// report them differently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {0} exceeds the supported maximum 2^32-1")]
    ConductorOverflow(u128),
    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u64, to: u64 },
    #[error("x-degree overflow (limit 2^31)")]
    DegreeOverflow,
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("grid too coarse: need at least {required} points, got {given}")]
    GridTooCoarse { required: u128, given: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("not invertible in W(K): vanishes at {0}")]
    NotInvertibleOnK(String),
    #[error("{0}")]
    Precondition(String),
    #[error("no separating representation found with k <= {0}")]
    SearchExhausted(u32),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
