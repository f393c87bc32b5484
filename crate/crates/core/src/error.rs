use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("link distance must be positive, got {0} km")]
    NonPositiveDistance(f64),

    #[error("carrier frequency {0} MHz outside the supported 150-3000 MHz range")]
    FrequencyOutOfRange(f64),

    /// A guarantee of one (or above) needs unbounded bandwidth.
    #[error("service guarantee {0} cannot be reached with finite bandwidth")]
    GuaranteeUnreachable(f64),

    #[error("rate {rate} does not exceed the minimum rate {b_min}")]
    RateNotAboveMinimum { rate: f64, b_min: f64 },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    Config { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
