use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operator is not diagonalizable: eigenspaces span {found} of 8 dimensions")]
    NonDiagonalizable { found: usize },
    #[error("basis octons are linearly dependent (rank {rank} of {len})")]
    DegenerateBasis { rank: usize, len: usize },
    #[error("span is not invariant under the operator (relative residual {residual:e})")]
    NotClosed { residual: f64 },
    #[error("axis is not a unit vector (norm {norm})")]
    BadAxis { norm: f64 },
    #[error("specs do not form a conjugate pair: {0}")]
    NotConjugatePair(String),
    #[error("finite-difference estimates disagree (relative gap {gap:e}); refine the grid")]
    GridTooCoarse { gap: f64 },
    #[error("potentials violate the gauge condition (residual {residual:e} > {tolerance:e})")]
    GaugeViolated { residual: f64, tolerance: f64 },
    #[error("the plane-wave backend only accepts constant potentials")]
    NonConstantPotential,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Error {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
