use std::fmt;

use thiserror::Error;

/// Which hop of the relay chain an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hop {
    SenseToRouter,
    RouterToBase,
}

impl fmt::Display for Hop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hop::SenseToRouter => f.write_str("sensing->router"),
            Hop::RouterToBase => f.write_str("router->base"),
        }
    }
}

/// A planning problem with no solution under the power cap / PER budget.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Infeasible {
    #[error("no mode meets the PER budget within p_max: best mode needs {required_w:.6e} W, short by {shortfall_w:.6e} W")]
    Link { required_w: f64, shortfall_w: f64 },
    #[error("relay link cannot meet the end-to-end PER budget within p_max; tighter link is {tighter}")]
    Relay { tighter: Hop },
    #[error("no reachable feasible router position at step {step}")]
    NoFeasibleCell { step: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("infeasible: {0}")]
    Infeasible(#[from] Infeasible),
    #[error("config error: {0}")]
    Config(String),
    #[error("invalid value for `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("run log line {line}: {reason}")]
    RunLog { line: usize, reason: String },
    #[error("constraint violated at step {step}: {reason}")]
    Constraint { step: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
