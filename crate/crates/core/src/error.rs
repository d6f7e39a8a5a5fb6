use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("enumeration over p = {p} points exceeds the limit p_max = {p_max}")]
    EnumerationTooLarge { p: usize, p_max: usize },

    #[error("ordering pairs for p = {p} are not enumerable ({pairs}); use the necessary/sufficient tests")]
    CombinatorialExplosion { p: usize, pairs: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("operation needs a bipartite shape (d1, d2) but the state has none")]
    Unshaped,

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("eigenvalue iteration did not converge after {iterations} sweeps at index {index}")]
    NoConvergence { index: usize, iterations: usize },
}

impl Error {
    /// True for failures of a numerical routine, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::NonFinite)
    }
}
