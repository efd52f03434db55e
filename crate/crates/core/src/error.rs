use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Adaptive refinement exhausted before reaching the requested accuracy.
    NonConvergence { what: &'static str, estimate: f64 },
    /// Semi-infinite integral requested with decay slower than `x^-2`.
    TailTooFat { exponent: f64 },
    /// Argument outside the operation's domain.
    Domain(&'static str),
    /// An interlacing bracket failed to show a sign change.
    RootMiss { lo: f64, hi: f64 },
    /// No sign change found on the search interval.
    NoRoot { lo: f64, hi: f64 },
    /// Malformed zero-ordinate input.
    Parse { line: usize, msg: &'static str },
    /// Zero ordinates not in ascending order.
    Monotonicity { line: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonConvergence { what, estimate } => {
                write!(f, "{what}: no convergence (error estimate {estimate:e})")
            }
            Error::TailTooFat { exponent } => {
                write!(f, "tail exponent {exponent} < 2: integral not controlled")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::RootMiss { lo, hi } => {
                write!(f, "expected a sign change on [{lo}, {hi}] but found none")
            }
            Error::NoRoot { lo, hi } => write!(f, "no root on [{lo}, {hi}]"),
            Error::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            Error::Monotonicity { line } => {
                write!(f, "line {line}: ordinates must be ascending")
            }
        }
    }
}

impl core::error::Error for Error {}
