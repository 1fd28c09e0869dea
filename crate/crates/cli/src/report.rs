use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Version tag of the JSON report layout; see `docs/report-schema.md`.
pub const SCHEMA: &str = "shirshov.run-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: &str, bytes: &[u8]) -> Self {
        InputDigest {
            name: name.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// What a subcommand produced, before it is wrapped into a report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub payload: Value,
    pub text: String,
    /// Rewrite or machine steps performed, when meaningful.
    pub steps: Option<usize>,
    pub exit_code: i32,
}

impl Outcome {
    pub fn ok(payload: Value, text: String) -> Self {
        Outcome {
            payload,
            text,
            steps: None,
            exit_code: 0,
        }
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = Some(steps);
        self
    }

    pub fn with_exit(mut self, code: i32) -> Self {
        self.exit_code = code;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub payload: Value,
    pub steps: Option<usize>,
    pub wall_time_ms: f64,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(
        command: Vec<String>,
        inputs: Vec<InputDigest>,
        outcome: &Outcome,
        wall_time_ms: f64,
    ) -> Self {
        RunReport {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command,
            inputs,
            payload: outcome.payload.clone(),
            steps: outcome.steps,
            wall_time_ms,
            exit_code: outcome.exit_code,
        }
    }
}
