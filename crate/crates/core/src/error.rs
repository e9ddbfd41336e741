use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant maps onto a stable machine-readable [`Error::code`] and a
/// process exit status used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group order {0}")]
    InvalidOrder(usize),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid action table: {0}")]
    InvalidAction(String),
    #[error("{what} of size {size} exceeds the budget of {budget}")]
    SizeLimit {
        what: &'static str,
        size: u128,
        budget: u128,
    },
    #[error("closure exceeded the cap of {cap} elements (stopped at {reached})")]
    ClosureCapExceeded { cap: usize, reached: usize },
    #[error("point set is not G-invariant: {point} is moved outside it")]
    NotInvariant { point: usize },
    #[error("stabilizer of point {x} is not contained in the stabilizer of point {y}")]
    StabilizerContainment { x: usize, y: usize },
    #[error("stabilizers of points {x} and {y} differ")]
    StabilizerEquality { x: usize, y: usize },
    #[error("{0}")]
    Domain(String),
    #[error("cannot parse {token:?} at position {position}: {message}")]
    Parse {
        token: String,
        position: usize,
        message: String,
    },
    #[error("structure theorem violated: {0}")]
    StructureViolation(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidOrder(_) => "invalid-order",
            Error::InvalidGroup(_) => "invalid-group",
            Error::InvalidPermutation(_) => "invalid-permutation",
            Error::InvalidAction(_) => "invalid-action",
            Error::SizeLimit { .. } => "size-limit",
            Error::ClosureCapExceeded { .. } => "closure-cap-exceeded",
            Error::NotInvariant { .. } => "not-invariant",
            Error::StabilizerContainment { .. } => "stabilizer-containment",
            Error::StabilizerEquality { .. } => "stabilizer-equality",
            Error::Domain(_) => "domain",
            Error::Parse { .. } => "parse",
            Error::StructureViolation(_) => "structure-violation",
            Error::Internal(_) => "internal",
        }
    }

    /// Exit status: 2 bad input, 3 budget, 4 property failure, 5 internal.
    pub fn exit_status(&self) -> i32 {
        match self {
            Error::SizeLimit { .. } | Error::ClosureCapExceeded { .. } => 3,
            Error::StructureViolation(_) => 4,
            Error::Internal(_) => 5,
            _ => 2,
        }
    }

    pub(crate) fn parse(token: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            token: token.to_string(),
            position,
            message: message.into(),
        }
    }
}

/// Fails with [`Error::SizeLimit`] when `size > budget`.
pub(crate) fn check_budget(what: &'static str, size: u128, budget: u128) -> Result<()> {
    if size > budget {
        Err(Error::SizeLimit { what, size, budget })
    } else {
        Ok(())
    }
}
