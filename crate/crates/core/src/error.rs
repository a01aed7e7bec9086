use thiserror::Error;

use crate::game::Verdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The game violates one or more standing assumptions.
    #[error("invalid game: {0}")]
    Validation(Verdict),

    #[error("malformed game document at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// An argument lies outside the interval on which the quantity is defined.
    #[error("{name} = {value} is outside the admissible range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error(
        "outcome {index} (payout {payout}) gives nonpositive wealth factor {factor} \
         at price {price}, proportion {proportion}"
    )]
    NonPositiveFactor {
        index: usize,
        payout: f64,
        factor: f64,
        price: f64,
        proportion: f64,
    },

    #[error("{what}: no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NoBracket {
        what: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("{what}: no convergence after {iterations} iterations (bracket [{lo}, {hi}])")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
    },

    /// Two routes that must agree did not; indicates a solver defect.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: impl Into<f64>, range: impl Into<String>) -> Self {
        Error::Domain {
            name,
            value: value.into(),
            range: range.into(),
        }
    }

    /// Process exit code for command-line front ends.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Parse { .. } => 1,
            Error::Domain { .. }
            | Error::NonPositiveFactor { .. }
            | Error::NoBracket { .. }
            | Error::NoConvergence { .. } => 2,
            Error::Consistency(_) => 3,
        }
    }
}
