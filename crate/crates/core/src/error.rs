use thiserror::Error;

/// Errors raised anywhere in the radius pipeline.
///
/// The CLI maps [`Error::Inadmissible`] and [`Error::InvalidInput`] to exit
/// code 2 and everything else to exit code 3.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("series did not converge after {terms} terms (|z| = {modulus})")]
    NonConvergent { terms: usize, modulus: f64 },

    #[error("derivative of order {order} is singular at z = 0 for order nu = {nu}")]
    DomainError { nu: f64, order: usize },

    #[error("singular point: denominator {denominator:e} vanishes at z = {re} + {im}i")]
    SingularPoint { re: f64, im: f64, denominator: f64 },

    #[error("found only {found} of {requested} zeros below x_max = {x_max}")]
    ScanExhausted {
        found: usize,
        requested: usize,
        x_max: f64,
    },

    #[error("no sign change (+,-) on ({lo}, {hi}): {reason}")]
    BracketFailure { lo: f64, hi: f64, reason: String },

    #[error("branch cut reached at zeta = {re} + {im}i")]
    BranchCut { re: f64, im: f64 },
}

impl Error {
    /// True for errors caused by the caller's parameters rather than by numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Inadmissible(_) | Error::InvalidInput(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
