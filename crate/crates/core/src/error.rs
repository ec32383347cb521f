use thiserror::Error;

use crate::partial::Shape;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: Shape, right: Shape },

    #[error("invalid carrier order {0} (must be between 1 and {max})", max = crate::partial::MAX_ORDER)]
    InvalidOrder(usize),

    #[error("element {label} is outside 1..={order}")]
    ElementOutOfRange { label: usize, order: usize },

    #[error("invalid code {code:?}: {reason}")]
    InvalidCode { code: String, reason: String },

    #[error("the table is not total")]
    NotTotal,

    #[error("images do not form a permutation of 1..={0}")]
    NotPermutation(usize),

    #[error("{what} exceeds the configured limit ({required} > {limit})")]
    LimitExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("fixture line {line}: {reason}")]
    Fixture { line: usize, reason: String },
}

impl Error {
    pub(crate) fn invalid_code(code: &str, reason: impl Into<String>) -> Self {
        Error::InvalidCode {
            code: code.to_owned(),
            reason: reason.into(),
        }
    }

    pub(crate) fn check_orders(left: usize, right: usize) -> Result<()> {
        if left == right {
            Ok(())
        } else {
            Err(Error::OrderMismatch { left, right })
        }
    }
}
