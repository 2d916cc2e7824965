use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The CLI maps these onto process exit codes: configuration problems exit
/// with 2, numeric failures with 3 and resource exhaustion with 4.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The map's lift has a vanishing resultant.
    #[error("invalid map: {0}")]
    InvalidMap(String),

    /// An iterative method stopped without meeting its tolerance.
    ///
    /// `best` is the best value reached and `bound` the certified error (or
    /// residual) that goes with it.
    #[error("numeric error: {message} (best {best:e}, bound {bound:e})")]
    Numeric { message: String, best: f64, bound: f64 },

    /// An orbit escaped near the boundary and the depth cap was reached
    /// before the requested tolerance; the true value lies in `[lo, hi]`.
    #[error("undecided: value in [{lo:e}, {hi:e}] after {depth} iterations")]
    Undecided { lo: f64, hi: f64, depth: usize },

    /// A size or digit budget was exceeded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>, best: f64, bound: f64) -> Self {
        Error::Numeric {
            message: msg.into(),
            best,
            bound,
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) | Error::InvalidMap(_) => 2,
            Error::Numeric { .. } | Error::Undecided { .. } => 3,
            Error::Resource(_) => 4,
            Error::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
