//! Named verification outcomes shared by every module that checks identities.

use alloc::string::{String, ToString};
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked identity. `residual` holds the nonzero difference on failure,
/// or the computed value for informational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: String,
    pub status: Status,
    pub residual: Option<String>,
    pub citation: String,
}

impl Finding {
    pub fn pass(name: impl Into<String>, citation: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            residual: None,
            citation: citation.into(),
        }
    }

    pub fn fail(name: impl Into<String>, residual: impl fmt::Display, citation: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            residual: Some(residual.to_string()),
            citation: citation.into(),
        }
    }

    pub fn info(name: impl Into<String>, value: impl fmt::Display, citation: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Info,
            residual: Some(value.to_string()),
            citation: citation.into(),
        }
    }

    /// Pass when `residual` is zero, otherwise fail carrying it.
    pub fn zero_check<T: fmt::Display>(
        name: impl Into<String>,
        residual: &T,
        is_zero: bool,
        citation: impl Into<String>,
    ) -> Self {
        if is_zero {
            Self::pass(name, citation)
        } else {
            Self::fail(name, residual, citation)
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}
