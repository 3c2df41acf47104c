use thiserror::Error;

/// Errors produced by the network model, policies, simulator and bounds.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: {what} has length {got}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("policy {policy} is not supported on this network: {reason}")]
    UnsupportedPolicy {
        policy: &'static str,
        reason: String,
    },

    #[error("network generation failed: {0}")]
    Generation(String),

    #[error("service frequency constraints are infeasible: sum of 1/delta = {sum} exceeds 1")]
    InfeasibleFrequency { sum: f64 },

    #[error("slack 1 - sum(1/delta) = {epsilon} must be strictly positive for this bound")]
    ZeroSlack { epsilon: f64 },

    #[error("lcm of the frame lengths overflows 64 bits; reduce the diversity of delta values")]
    LcmOverflow,

    #[error("non-finite queue value for link {link} at slot {slot}")]
    NonFinite { link: usize, slot: u64 },

    #[error("non-finite {metric} in {config}")]
    NonFiniteMetric {
        metric: &'static str,
        config: String,
    },

    #[error("no runs to aggregate")]
    EmptyInput,

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("malformed trace: {0}")]
    Trace(String),

    #[error("malformed results: {0}")]
    Results(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(what: &'static str, got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            what,
            got,
            expected,
        })
    }
}
