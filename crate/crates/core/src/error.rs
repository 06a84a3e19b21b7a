use thiserror::Error;

use crate::validate::ValidationReport;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("malformed ring spec: {0}")]
    MalformedSpec(String),

    #[error("ring order {order} exceeds the configured cap of {cap} elements")]
    OrderCapExceeded { order: u128, cap: usize },

    #[error("table does not define a unital ring: {0}")]
    InvalidTable(ValidationReport),

    #[error("element index {index} out of range for a ring of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("order {order} outside the supported range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },

    #[error("search budget exhausted: {0}")]
    BudgetExceeded(String),
}

pub type Result<T, E = RingError> = std::result::Result<T, E>;
