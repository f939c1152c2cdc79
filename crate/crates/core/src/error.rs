//! Error type shared across the crate.

use crate::solver::KktResidual;
use crate::ScalarField;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The fluid set of a rasterized scenario splits into several components.
    #[error("fluid set is not connected ({components} components)")]
    NotConnected { components: usize },

    /// No finite strip constant exists inside the grid (e.g. the graph exits
    /// the box through the bottom or top row).
    #[error("strip condition violated: {0}")]
    StripViolation(String),

    /// A scenario modifier does not fit strictly inside the computational box.
    #[error("scenario does not fit the grid: {0}")]
    ScenarioOutOfBounds(String),

    /// The box is not deep enough for the requested time parameter.
    #[error("bottom depth too shallow: L = {l} but L > {required} is needed")]
    DepthTooShallow { l: f64, required: f64 },

    /// The box is not tall enough for the requested time parameter.
    #[error("top of box too low: H_top = {h_top} but H_top > {required} is needed")]
    CeilingTooLow { h_top: f64, required: f64 },

    /// Iteration budget exhausted; the best iterate is attached.
    #[error("solver did not converge within {iterations} iterations (residual {residual:?})")]
    NotConverged {
        iterations: usize,
        residual: KktResidual,
        field: Box<ScalarField>,
    },

    /// The iterate left the space of finite numbers.
    #[error("non-finite value encountered at iteration {iteration}")]
    NonFiniteValue { iteration: usize },

    /// Instance too large for exhaustive active-set enumeration.
    #[error("problem has {nodes} interior nodes, enumeration oracle supports at most {max}")]
    TooLarge { nodes: usize, max: usize },

    /// No active set passes the feasibility checks; indicates an assembly bug.
    #[error("no feasible active set found")]
    NoFeasibleActiveSet,

    /// A mask column has a hole, so no graph function exists.
    #[error("mask is not a subgraph: column {column} has a hole")]
    NotAGraph { column: usize },

    #[error("operands live on different grids")]
    GridMismatch,

    /// The probe ball must be wider than the strip constant.
    #[error("ball radius {r_ball} must exceed strip constant {c}")]
    BallTooSmall { r_ball: f64, c: f64 },

    #[error("operation not available in horizontal dimension d = {d}")]
    DimensionUnsupported { d: usize },

    /// A solver error tagged with the sweep time at which it occurred.
    #[error("at time t = {time}: {source}")]
    AtTime {
        time: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at_time(self, time: f64) -> Error {
        Error::AtTime {
            time,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
