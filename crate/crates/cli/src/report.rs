use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// What a command did: its parameters, the files it wrote and the
/// invariants it checked along the way.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub outputs: Vec<PathBuf>,
    pub checks_passed: Vec<Check>,
    pub wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn start(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            outputs: Vec::new(),
            checks_passed: Vec::new(),
            wall_time_ms: 0,
            summary: None,
            started: Some(Instant::now()),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, path: impl AsRef<Path>) {
        self.outputs.push(path.as_ref().to_path_buf());
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks_passed.push(Check {
            name: name.to_string(),
            passed,
            detail: None,
        });
    }

    pub fn check_detail(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks_passed.push(Check {
            name: name.to_string(),
            passed,
            detail: Some(detail.into()),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks_passed.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks_passed.iter().filter(|c| !c.passed).collect()
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.wall_time_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    /// The report without timing, for files that must be byte-identical
    /// across runs.
    pub fn manifest(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("wall_time_ms");
        }
        v
    }
}
