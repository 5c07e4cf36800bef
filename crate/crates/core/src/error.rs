use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("x = {x} lies outside the tabulated range [{lo}, {hi}]")]
    Range { x: f64, lo: f64, hi: f64 },

    #[error("potential has no derivative at its discontinuities")]
    NonSmooth,

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// `exp(exponent)` does not fit in an `f64`; use the log-domain entry points.
    #[error("Airy evaluation overflows (exponent {exponent})")]
    Overflow { exponent: f64 },

    #[error("no barrier at this energy (E = {energy})")]
    NoBarrier { energy: f64 },

    #[error("barrier at E = {energy} does not fit inside the window [{lo}, {hi}]")]
    UnbracketedBarrier { energy: f64, lo: f64, hi: f64 },

    #[error("multi-hump barrier unsupported: {crossings} turning points in window")]
    MultiHumpUnsupported { crossings: usize },

    #[error("degenerate turning point: {0}")]
    DegenerateTurningPoint(String),

    #[error("potential does not share a common asymptote: V(left) = {left}, V(right) = {right}")]
    AsymptoteMismatch { left: f64, right: f64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
