//! Error type shared across the crate.
//!
//! Two broad classes matter to callers (and map to distinct CLI exit codes):
//! configuration/usage problems ([`Error::Config`], [`Error::ConfigLine`], exit 1)
//! and numerical/domain problems (everything else, exit 2).

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical-domain precondition was violated (non-positive mass,
    /// non-finite argument, zero noise floor where an inversion needs one, …).
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is defined only for some body shapes.
    #[error("unsupported shape: {0}")]
    UnsupportedShape(&'static str),

    /// Inputs are individually valid but degenerate for the requested operation.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Configuration or usage error with no specific source line.
    #[error("config error: {0}")]
    Config(String),

    /// Configuration error attributable to a line of a config file.
    #[error("config error at line {line}: {message}")]
    ConfigLine { line: usize, message: String },

    /// I/O failure while reading a config or writing an output file.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::ConfigLine { .. } | Error::Io(_) => 1,
            Error::Domain(_) | Error::UnsupportedShape(_) | Error::Degenerate(_) => 2,
        }
    }

    /// Shorthand for a [`Error::Domain`] with a formatted message.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Require that `value` is finite and strictly positive.
pub fn ensure_positive(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain(format!("{what} must be positive and finite, got {value}")))
    }
}

/// Require that `value` is finite and non-negative.
pub fn ensure_non_negative(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain(format!("{what} must be non-negative and finite, got {value}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_config_from_domain() {
        assert_eq!(Error::Config("x".into()).exit_code(), 1);
        assert_eq!(Error::ConfigLine { line: 3, message: "x".into() }.exit_code(), 1);
        assert_eq!(Error::Domain("x".into()).exit_code(), 2);
        assert_eq!(Error::UnsupportedShape("cube").exit_code(), 2);
        assert_eq!(Error::Degenerate("x".into()).exit_code(), 2);
    }

    #[test]
    fn positivity_guards() {
        assert!(ensure_positive(1.0, "m").is_ok());
        assert!(ensure_positive(0.0, "m").is_err());
        assert!(ensure_positive(f64::NAN, "m").is_err());
        assert!(ensure_non_negative(0.0, "S").is_ok());
        assert!(ensure_non_negative(-1e-30, "S").is_err());
    }
}
