use thiserror::Error;

/// Errors produced by the kernels, the quadrature oracle and the evaluator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The argument lies outside the real domain of the function.
    #[error("{function}: {constraint} (got x = {x})")]
    Domain {
        function: &'static str,
        constraint: &'static str,
        x: f64,
    },

    /// An iterative method exhausted its budget before meeting its tolerance.
    #[error("{what} did not converge after {iterations} steps (last estimate {value:e}, error {error:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        value: f64,
        error: f64,
    },

    /// The route is valid but cannot deliver the requested accuracy in 64-bit floats.
    #[error("{what}: accuracy loss at x = {x} ({reason})")]
    AccuracyLoss {
        what: &'static str,
        x: f64,
        reason: &'static str,
    },

    #[error("{what}: result overflows f64 at x = {x}")]
    Overflow { what: &'static str, x: f64 },

    #[error("pole {pole} is not strictly inside ({a}, {b})")]
    PoleOutsideRange { a: f64, b: f64, pole: f64 },

    /// The integrand does not decay fast enough for the non-oscillatory tail.
    #[error("integrand does not decay on [{a}, inf); set an oscillation period for conditionally convergent tails")]
    DivergentTail { a: f64 },

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("no sign change for {what} on [{a}, {b}]")]
    RootNotBracketed { what: &'static str, a: f64, b: f64 },

    #[error("sieve limit {limit} exceeds the supported maximum {max}")]
    LimitTooLarge { limit: u64, max: u64 },

    #[error("{x} is outside the table range [0, {limit}]")]
    OutOfRange { x: u64, limit: u64 },
}

impl Error {
    pub(crate) fn domain(function: &'static str, constraint: &'static str, x: f64) -> Self {
        Error::Domain {
            function,
            constraint,
            x,
        }
    }

    /// True for errors caused by the caller's input rather than by numerics.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. }
                | Error::PoleOutsideRange { .. }
                | Error::InvalidInterval { .. }
                | Error::InvalidConfig(_)
                | Error::LimitTooLarge { .. }
                | Error::OutOfRange { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
