use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("adjacency matrix is not square: row {row} has {found} entries, expected {expected}")]
    NonSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("adjacency matrix is not symmetric at ({i}, {j})")]
    AsymmetricEntry { i: usize, j: usize },

    #[error("adjacency matrix has a nonzero diagonal entry at vertex {0}")]
    NonzeroDiagonal(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("a graph needs at least one vertex")]
    EmptyGraph,

    #[error("parameter {0} is not finite")]
    NonFinite(&'static str),

    #[error("n = {n} exceeds the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("mean-field equations need n >= 3, got n = {0}")]
    BadDimension(usize),

    #[error("moment vector is outside the attainable range: {0}")]
    InvalidMoments(String),

    #[error(
        "empirical moments lie on the boundary of the attainable range; the MLE does not exist"
    )]
    BoundaryMoments,

    #[error(
        "gradient ascent did not converge in {iterations} iterations (gradient norm {grad_norm:e})"
    )]
    NonConvergence { iterations: usize, grad_norm: f64 },

    #[error("singular mean-field Jacobian (det = {det:e})")]
    SingularJacobian { det: f64 },

    #[error("Newton solver did not converge in {iterations} iterations (residual {residual:e})")]
    NewtonMaxIter { iterations: usize, residual: f64 },

    #[error(
        "mean-field system did not converge; parameters are likely in the low-temperature phase"
    )]
    LowTemperatureSuspected,

    #[error("low-temperature regime encountered at iteration {iteration}; mean-field moments unavailable")]
    LowTemperatureEncountered { iteration: usize },

    #[error("objective decreased for {window} consecutive iterations (at iteration {iteration}); step size too large")]
    Divergence { iteration: usize, window: usize },

    #[error("pseudo-likelihood maximum does not exist (separated data, detected at iteration {iteration})")]
    Separation { iteration: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// True for failures of the numerical procedures, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::SingularJacobian { .. }
                | Error::NewtonMaxIter { .. }
                | Error::LowTemperatureSuspected
                | Error::LowTemperatureEncountered { .. }
                | Error::Divergence { .. }
                | Error::Separation { .. }
                | Error::BoundaryMoments
        )
    }
}
