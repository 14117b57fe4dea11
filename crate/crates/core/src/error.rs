use thiserror::Error;

use crate::model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("infeasible instance: {}", format_violations(.0))]
    Infeasible(Vec<Violation>),

    #[error("wrong branch: {0}")]
    WrongBranch(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    /// A solver post-condition failed. Always a bug, never bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("oracle did not converge within {iterations} iterations (violation {violation:.3e})")]
    OracleFailure { iterations: usize, violation: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate horizon: {horizon} is shorter than one slot ({slot})")]
    DegenerateHorizon { horizon: f64, slot: f64 },

    #[error("malformed instance file: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
