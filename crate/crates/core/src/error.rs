use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge within {panels} panels (estimated error {error:e}, requested {tol:e})")]
    QuadratureBudget { panels: usize, error: f64, tol: f64 },

    #[error("integrand returned a non-finite value {value} at t = {at}")]
    NonFinite { at: f64, value: f64 },

    #[error("root search failed: {0}")]
    Bracket(String),

    #[error("n = {n} exceeds the enumeration limit {max}")]
    SizeTooLarge { n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
