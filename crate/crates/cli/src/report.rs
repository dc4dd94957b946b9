use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            details: Value::Null,
        }
    }

    pub fn with(name: impl Into<String>, passed: bool, details: Value) -> Self {
        Check {
            name: name.into(),
            passed,
            details,
        }
    }
}

/// What a subcommand produces before it is wrapped in a [`RunReport`].
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub exit_code: i32,
}

impl RunReport {
    pub fn from_outcome(command: String, o: Outcome) -> Self {
        let exit_code = if o.checks.iter().all(|c| c.passed) {
            0
        } else {
            1
        };
        RunReport {
            schema_version: SCHEMA_VERSION,
            command,
            inputs: o.inputs,
            results: o.results,
            checks: o.checks,
            exit_code,
        }
    }

    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        if failed.is_empty() {
            format!("{}: {} checks passed", self.command, self.checks.len())
        } else {
            format!("{}: failed checks: {}", self.command, failed.join(", "))
        }
    }
}

/// Report for input that could not be read or did not validate.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub schema_version: &'static str,
    pub command: String,
    pub error: String,
    pub exit_code: i32,
}

impl ErrorReport {
    pub fn new(command: String, error: &anyhow::Error) -> Self {
        ErrorReport {
            schema_version: SCHEMA_VERSION,
            command,
            error: format!("{error:#}"),
            exit_code: 2,
        }
    }
}
