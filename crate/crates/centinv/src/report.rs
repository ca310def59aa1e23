//! JSON report structures emitted by the command-line driver and the C
//! bindings. The body (everything except timing) is byte-stable for a
//! fixed job configuration.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct JobEcho {
    pub command: String,
    pub lambda: String,
    pub case: String,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        detail: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        pass: bool,
    ) -> Self {
        Check {
            name: name.into(),
            detail: detail.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }

    /// A check that passes exactly when `expected == actual`.
    pub fn eq(
        name: impl Into<String>,
        detail: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        let e = expected.to_string();
        let a = actual.to_string();
        let pass = e == a;
        Check {
            name: name.into(),
            detail: detail.into(),
            expected: e,
            actual: a,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub job: JobEcho,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<serde_json::Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(job: JobEcho) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            job,
            checks: Vec::new(),
            payload: None,
            pass: true,
            timing_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    /// The deterministic part: full JSON with timing stripped.
    pub fn body_json(&self) -> String {
        let mut clone = self.clone();
        clone.timing_ms = None;
        serde_json::to_string_pretty(&clone).expect("report serialises")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
