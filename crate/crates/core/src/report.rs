//! Machine-readable check reports shared by the library and the CLI.

use serde::Serialize;

use crate::weylmod::Level;

pub const SCHEMA: &str = "kacspin.report/1";

/// One failed identity: a name, the operands and both sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub identity: String,
    pub operands: Vec<String>,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

impl Counterexample {
    pub fn new(identity: impl Into<String>, operands: Vec<String>, lhs: serde_json::Value, rhs: serde_json::Value) -> Self {
        Counterexample { identity: identity.into(), operands, lhs, rhs }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema: &'static str,
    pub check: String,
    pub diagram: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<Level>,
    pub status: Status,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub experimental: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexample: Vec<Counterexample>,
}

impl CheckReport {
    pub fn new(check: &str, diagram: &str, level: Option<Level>, failures: Vec<Counterexample>) -> Self {
        let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
        CheckReport {
            schema: SCHEMA,
            check: check.into(),
            diagram: diagram.into(),
            level,
            status,
            experimental: false,
            details: None,
            counterexample: failures,
        }
    }

    pub fn with_details(mut self, d: serde_json::Value) -> Self {
        self.details = Some(d);
        self
    }

    pub fn experimental(mut self, yes: bool) -> Self {
        self.experimental = yes;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
