use thiserror::Error;

/// Errors raised by the engine.
///
/// Every variant maps to a short, stable machine-readable kind through
/// [`NlError::kind`], which the command-line front end prints as the
/// `error: <kind>:` prefix.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NlError {
    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what} exceeds the configured limit of {limit}")]
    ResourceLimit { what: &'static str, limit: u64 },

    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("{0}")]
    Domain(String),

    #[error("loops admit no acyclic coloring")]
    LoopPresent,

    #[error("matrix does not have full row rank (rank {rank} < {rows} rows); row-reduce first")]
    RankDeficient { rank: usize, rows: usize },

    #[error("need at least {needed} points with distinct abscissae, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("not an integer polynomial: interpolant is {rational}")]
    NotIntegerPolynomial { rational: String },

    #[error(
        "polynomiality violated at k = {k}: interpolant predicts {predicted}, count is {actual}"
    )]
    PolynomialityViolated {
        k: i64,
        predicted: String,
        actual: String,
    },

    #[error("Farkas alternative violated: {0}")]
    FarkasViolation(String),

    #[error("{0}")]
    Io(String),
}

impl NlError {
    pub fn kind(&self) -> &'static str {
        match self {
            NlError::InvalidDigraph(_) => "invalid-digraph",
            NlError::InvalidMatrix(_) => "invalid-matrix",
            NlError::Parse { .. } => "parse",
            NlError::ResourceLimit { .. } => "resource",
            NlError::BudgetExceeded { .. } => "budget",
            NlError::Domain(_) => "domain",
            NlError::LoopPresent => "domain",
            NlError::RankDeficient { .. } => "domain",
            NlError::InsufficientPoints { .. } => "precondition",
            NlError::NotIntegerPolynomial { .. } => "not-integer-polynomial",
            NlError::PolynomialityViolated { .. } => "polynomiality-violated",
            NlError::FarkasViolation(_) => "farkas",
            NlError::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, NlError>;
