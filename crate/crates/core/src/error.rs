use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("the term has a pole at x = 0")]
    Pole,

    /// The same-sign series has no finite sum (its tail integral is infinite).
    #[error("series 1/x^{exponent} diverges: the exponent must be greater than 1")]
    Divergent { exponent: u32 },

    #[error("the term provides no tail integral, so the same-sign formula is unavailable")]
    MissingTailIntegral,

    /// Series division where the divisor's leading coefficient cannot be cancelled.
    #[error("power series divisor has no invertible leading coefficient")]
    NonInvertibleSeries,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors that come from the mathematics of the request
    /// (poles, divergence) rather than from malformed input.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::Pole | Error::Divergent { .. } | Error::MissingTailIntegral
        )
    }
}
