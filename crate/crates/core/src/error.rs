use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    #[error("non-finite potential value at r = {r}")]
    NonFinitePotential { r: f64 },

    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),

    #[error("factorization breakdown: {0}")]
    FactorizationBreakdown(String),

    #[error("invalid test function: {0}")]
    InvalidTestFunction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
