use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid design parameters: {0}")]
    InvalidParams(String),
    #[error("lambda_{0} is not an integer")]
    NonIntegralIndex(usize),
    #[error("block count does not yield an integral lambda")]
    NonIntegral,
    #[error("MacWilliams transform is not integral at weight {0}")]
    NonIntegralTransform(usize),
    #[error("enumerator is not in the span of the Gleason basis")]
    NotInSpan,
    #[error("zero conditions are inconsistent")]
    Overconstrained,
    #[error("unknown case (m={0}, k={1})")]
    UnknownCase(u32, u32),
    #[error("dimension {0} exceeds the enumeration cap of 28")]
    DimensionTooLarge(usize),
    #[error("invalid block list: {0}")]
    BadBlockList(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
