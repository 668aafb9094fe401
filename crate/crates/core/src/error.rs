use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} spins, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("spin index {index} out of range for {num_spins} spins")]
    IndexOutOfRange { index: usize, num_spins: usize },

    #[error("term {0:?} repeats a spin index")]
    RepeatedIndex(Vec<usize>),

    #[error("duplicate term {0:?}")]
    DuplicateTerm(Vec<usize>),

    #[error("spin value {value} at position {position} is not -1 or +1")]
    InvalidSpin { position: usize, value: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("unknown topology '{0}' (expected eagle127, heron133 or RxC)")]
    UnknownTopology(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("no exact gadget for target {target} with coefficients bounded by {bound}")]
    SynthesisFailed { target: f64, bound: f64 },

    #[error("gadget set has no gadget for cubic coefficients of sign {sign}")]
    MissingGadget { sign: i8 },

    #[error(
        "frustrated strong cycle {cycle:?}: no spin-reversal makes every strong coupling negative"
    )]
    CompressionInfeasible { cycle: Vec<usize> },

    #[error("problem has {num_spins} spins, above the limit of {limit}; {hint}")]
    TooLarge {
        num_spins: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("operation requires a quadratic problem but found {0} cubic terms")]
    NotQuadratic(usize),

    #[error("sample set is empty")]
    EmptySamples,

    #[error("problem has no coefficients")]
    EmptyProblem,
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
