use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidParams(String),

    #[error("input index {index} out of range for m = {m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("class {class} out of range (dimension {dim})")]
    ClassOutOfRange { class: usize, dim: usize },

    #[error("scenario mismatch: {0}")]
    ParamsMismatch(String),

    #[error("{what}: requested {requested}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        requested: String,
        cap: String,
    },

    #[error("enumeration budget exceeded: {requested} cases, budget {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
