use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("domain too small for wrap-around rule: need half-width >= {required:.3}, have {actual:.3}")]
    WrapAround { required: f64, actual: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no stationary contribution: {0}")]
    NoStationaryContribution(String),

    #[error("infeasible annulus: {0}")]
    Infeasible(String),

    #[error("degenerate fit window: {0}")]
    DegenerateWindow(String),

    #[error("empty selection: {0}")]
    EmptySelection(String),

    #[error("iterates diverged: {0}")]
    Divergence(String),

    #[error("field format: {0}")]
    Format(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
