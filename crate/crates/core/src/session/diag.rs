use std::fmt;

use serde::Serialize;

use crate::error::Error;

/// Input-side failure with a stable code, reported before or instead of results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: &'static str,
    pub kind: &'static str,
    pub message: String,
}

pub const IO: (&str, &str) = ("E001", "io error");
pub const JSON: (&str, &str) = ("E002", "malformed session");
pub const UNRESOLVED: (&str, &str) = ("E003", "unresolved reference");
pub const DUPLICATE: (&str, &str) = ("E004", "duplicate name");
pub const ARGUMENT: (&str, &str) = ("E005", "invalid argument");
pub const PARSE: (&str, &str) = ("E006", "parse error");
pub const RESOURCE: (&str, &str) = ("E007", "resource cap exceeded");
pub const HYPOTHESIS: (&str, &str) = ("E008", "hypothesis not satisfied");
pub const STRATEGY: (&str, &str) = ("E009", "invalid test element");

impl Diagnostic {
    pub fn new(kind: (&'static str, &'static str), message: impl Into<String>) -> Self {
        Diagnostic { code: kind.0, kind: kind.1, message: message.into() }
    }

    /// Prefixes the message with where the failure happened.
    pub fn at(mut self, context: &str) -> Self {
        self.message = format!("{context}: {}", self.message);
        self
    }
}

impl From<Error> for Diagnostic {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::NotPrime(_) | Error::Syntax { .. } | Error::UnknownVariable(_) | Error::DuplicateVariable(_) => PARSE,
            Error::Resource(_) | Error::ExponentOverflow(_) => RESOURCE,
            Error::NotZeroDimensional | Error::NotMPrimary | Error::NotHomogeneous(_) | Error::Hypothesis(_) => {
                HYPOTHESIS
            }
            Error::InvalidStrategy(_) => STRATEGY,
            Error::RingMismatch(_) | Error::NotFrobeniusPower { .. } | Error::Invalid(_) => ARGUMENT,
        };
        let text = e.to_string();
        // the kind already names the category
        let message = text.strip_prefix(kind.1).and_then(|m| m.strip_prefix(": ")).unwrap_or(&text).to_string();
        Diagnostic::new(kind, message)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}] {}: {}", self.code, self.kind, self.message)
    }
}

pub type DResult<T> = std::result::Result<T, Diagnostic>;
