use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("denominator pair {pair} vanished at series index {index} before termination")]
    DenominatorVanished { pair: usize, index: usize },

    #[error("series did not converge within {max_terms} terms")]
    NonConvergent { max_terms: usize },
}
