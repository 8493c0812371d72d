use thiserror::Error;

use crate::spectral::{Pole, VarietyTag};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("word of {len} letters exceeds the limit of {max}")]
    InputSize { len: usize, max: usize },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("rational map has a pole: {0}")]
    Pole(Pole),

    #[error("point lies on variety {0}; block is not invertible")]
    Variety(VarietyTag),

    #[error("singular group-algebra element: {0}")]
    SingularAlgebra(String),

    #[error("walk increment {0} lies outside the support {{e, a, b, c}}")]
    SupportViolation(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
