use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator argument x = {x} must be positive")]
    NonPositiveArgument { x: f64 },

    #[error("conjugate argument y = {y} violates {constraint} (alpha = {alpha})")]
    ConjugateDomain {
        alpha: f64,
        y: f64,
        constraint: String,
    },

    #[error("conjugate argument out of domain at sample {index}: {source}")]
    SampleDomain {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("p is not absolutely continuous w.r.t. q: outcome {outcome} has p > 0 but q = 0")]
    AbsoluteContinuity { outcome: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("induced Markov chain is reducible: {0}")]
    Reducible(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NotConverged { what: &'static str, iterations: usize },

    #[error("dual objective diverged ({value}) at iteration {iteration}; try a larger temperature eta")]
    Diverged { value: f64, iteration: usize },

    #[error("temperature collapsed to zero: the divergence bound {epsilon} admits unconstrained improvement")]
    TemperatureCollapsed { epsilon: f64 },

    #[error("baseline bracket failure: no root of the normalization equation in [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("state {state} has zero total primal mass")]
    ZeroMass { state: usize },

    #[error("Pearson equivalence requires kappa = 0, but sample {index} is clipped")]
    PearsonClipped { index: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("iteration {iteration}: {source}")]
    AtIteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// True for failures raised by the numerical solvers (as opposed to bad input).
    pub fn is_solver_failure(&self) -> bool {
        match self {
            Error::NotConverged { .. }
            | Error::Diverged { .. }
            | Error::TemperatureCollapsed { .. }
            | Error::Bracket { .. }
            | Error::ZeroMass { .. }
            | Error::SampleDomain { .. }
            | Error::ConjugateDomain { .. } => true,
            Error::AtIteration { source, .. } => source.is_solver_failure(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
