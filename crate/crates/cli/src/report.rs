use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use winding_core::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// One pass/fail threshold evaluated by a command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

/// Serialized record of one run. Everything except `wall_clock_seconds` is a
/// pure function of `params`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub command: String,
    pub params: Value,
    pub estimates: Value,
    pub diagnostics: Value,
    pub checks: Vec<Check>,
    pub wall_clock_seconds: f64,
}

impl ExperimentReport {
    pub fn new(command: &str, params: &impl Serialize) -> Self {
        ExperimentReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            params: serde_json::to_value(params).expect("parameters serialize"),
            estimates: Value::Null,
            diagnostics: Value::Null,
            checks: Vec::new(),
            wall_clock_seconds: 0.0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Pretty JSON with the timing field zeroed, for reproducibility checks.
    pub fn to_json_without_timing(&self) -> String {
        let mut r = self.clone();
        r.wall_clock_seconds = 0.0;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write(&self, file: &Path) -> Result<()> {
        let mut f = std::fs::File::create(file).map_err(|e| Error::io(file, e))?;
        writeln!(f, "{}", self.to_json()).map_err(|e| Error::io(file, e))
    }
}
