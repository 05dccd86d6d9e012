use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{name} = {value} is outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: String,
    },

    /// A strategy was paired with a scenario of a different span dimension.
    #[error("dimension mismatch: strategy acts on {found} dimensions, scenario spans {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Lengths of paired lists disagree.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// A matrix failed density-matrix validation.
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: impl Into<String>) -> Self {
        Error::Domain {
            name,
            value,
            domain: domain.into(),
        }
    }
}
