//! Command-line front end for the `vofrac-core` toolkit.
//!
//! Three verbs: `run <config>` integrates one configuration and writes its
//! artifacts, `compare <config>` integrates the same configuration under
//! several schemes and tabulates them, and `list-systems` prints the built-in
//! catalog. Configurations are strict TOML: unknown keys are hard errors, and
//! every validation failure names the offending field.

pub mod commands;
pub mod config;
pub mod output;

use serde::Serialize;

/// Failure with an optional config-field path. Rendered as a single JSON line
/// on stderr so callers can locate the offending setting mechanically.
#[derive(Debug, Serialize)]
pub struct CliError {
    /// Human-readable description of what went wrong.
    pub error: String,
    /// Dotted path of the config field at fault (e.g. `grid.h`), when the
    /// failure is attributable to one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl CliError {
    pub fn new(message: impl Into<String>) -> Self {
        Self {
            error: message.into(),
            field: None,
        }
    }

    pub fn for_field(field: &str, message: impl Into<String>) -> Self {
        Self {
            error: message.into(),
            field: Some(field.to_string()),
        }
    }

    /// The stderr representation: one JSON object per error.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serialization cannot fail")
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.field {
            Some(field) => write!(f, "{} (field {field})", self.error),
            None => f.write_str(&self.error),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vofrac_core::Error> for CliError {
    fn from(e: vofrac_core::Error) -> Self {
        CliError::new(e.to_string())
    }
}
