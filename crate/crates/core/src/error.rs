use thiserror::Error;

use crate::scenario::Scenario;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid scenario {0}: every cardinality must be at least 2")]
    InvalidScenario(String),

    #[error("table has {found} entries but scenario {scenario} needs {expected}")]
    ShapeMismatch {
        scenario: Scenario,
        expected: usize,
        found: usize,
    },

    #[error("behaviors belong to different scenarios ({0} vs {1})")]
    MixedScenarios(Scenario, Scenario),

    #[error("invalid behavior: {0}")]
    InvalidBehavior(String),

    #[error("illegal relabeling: {0}")]
    IllegalRelabeling(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource guard exceeded: {what} would exceed the limit of {limit}")]
    GuardExceeded { what: &'static str, limit: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("integer overflow in exact arithmetic ({0})")]
    Overflow(&'static str),

    #[error("linear program infeasible: {0}")]
    Infeasible(String),

    #[error("unknown {kind} '{name}' (known: {known})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("events {0} and {1} are not locally orthogonal")]
    NotAClique(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
