use std::fmt;

use thiserror::Error;

/// Which su(2) factor of so(4) a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    /// The self-dual factor.
    SelfDual,
    /// The anti-self-dual factor.
    AntiSelfDual,
}

impl Channel {
    pub fn label(self) -> &'static str {
        match self {
            Channel::SelfDual => "self-dual",
            Channel::AntiSelfDual => "anti-self-dual",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The combined rotation sits on the antipodal point where the
    /// rotation axis is undefined.
    #[error("antipodal singularity{}: {detail}", channel.map(|c| format!(" in {c} channel")).unwrap_or_default())]
    AntipodalSingularity { channel: Option<Channel>, detail: String },

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub(crate) fn antipodal(detail: impl Into<String>) -> Self {
        Error::AntipodalSingularity { channel: None, detail: detail.into() }
    }

    /// Tags an antipodal error with the channel it came from. Other
    /// variants pass through untouched.
    pub fn in_channel(self, channel: Channel) -> Self {
        match self {
            Error::AntipodalSingularity { detail, .. } => {
                Error::AntipodalSingularity { channel: Some(channel), detail }
            }
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
