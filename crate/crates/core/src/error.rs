use thiserror::Error;

use crate::evidence::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("odds {0} must be non-negative")]
    NegativeOdds(f64),

    #[error("likelihood pair ({given_h}, {given_not_h}) must have both components in (0, 1]")]
    InvalidLikelihood { given_h: f64, given_not_h: f64 },

    #[error("likelihood ratio {0} must be positive and finite")]
    InvalidRatio(f64),

    #[error("unknown support level `{0}`")]
    UnknownLevel(String),

    #[error("unknown sort `{0}`")]
    UnknownSort(String),

    #[error("invalid identifier `{0}`")]
    InvalidId(String),

    #[error("invalid assessment matrix: {}", join_violations(.0))]
    InvalidMatrix(Vec<Violation>),

    #[error("weights must be {expected} non-negative finite values with a positive sum")]
    InvalidWeights { expected: usize },

    #[error("trajectory needs at least two probabilities, got {0}")]
    TrajectoryTooShort(usize),

    #[error("probability {value} at position {index} is an endpoint; its odds are not finite")]
    EndpointProbability { index: usize, value: f64 },

    #[error("grid shape mismatch: {0}")]
    GridShape(String),

    #[error("perturbation spec rejected: {0}")]
    InvalidPerturbation(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported schema version `{found}` (expected `{expected}`)")]
    SchemaVersion { found: String, expected: String },

    #[error("unknown report format `{0}` (expected md, csv or json)")]
    UnknownFormat(String),

    #[error("malformed report: {0}")]
    MalformedReport(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
