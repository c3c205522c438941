use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid problem: {}", .0.join("; "))]
    InvalidProblem(Vec<String>),

    #[error("{0}")]
    Scenario(String),

    #[error("evaluator `{evaluator}` returned a non-finite value at vars={vars:?}, params={params:?}")]
    NonFinite {
        evaluator: String,
        vars: Vec<f64>,
        params: Vec<f64>,
    },

    #[error("dimension mismatch: expected {expected}, got {got} ({what})")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("no feasible point found: {0}")]
    Infeasible(String),

    #[error("scenario subset must not be empty")]
    EmptySubset,

    #[error("unknown scenario id {0}")]
    UnknownScenario(usize),

    #[error("unknown point id {0}")]
    UnknownPoint(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("empty front: {0}")]
    EmptyFront(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by the caller's input rather than by the computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidProblem(_)
                | Error::Scenario(_)
                | Error::Dimension { .. }
                | Error::EmptySubset
                | Error::UnknownScenario(_)
                | Error::Config(_)
                | Error::Json(_)
        )
    }
}
