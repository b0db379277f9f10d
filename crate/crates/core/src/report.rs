//! Machine-readable check reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::TOOL_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, details: Value) -> Self {
        Check {
            name: name.into(),
            status,
            details,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub tool_version: String,
}

impl CheckReport {
    pub fn new(command: impl Into<String>, inputs: Value) -> Self {
        CheckReport {
            command: command.into(),
            inputs,
            checks: Vec::new(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({})", self.command, self.tool_version);
        if let Value::Object(map) = &self.inputs {
            for (k, v) in map {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{:<12}] {:<width$}  {}",
                c.status.as_str(),
                c.name,
                c.details
            );
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn failures_and_rendering() {
        let mut r = CheckReport::new("demo", json!({"n": 2}));
        r.push(Check::new("a", Status::Pass, json!({})));
        assert!(!r.has_failures());
        r.push(Check::new("b", Status::Inconclusive, json!(null)));
        assert!(!r.has_failures());
        r.push(Check::new("c", Status::Fail, json!({"why": 1})));
        assert!(r.has_failures());
        let text = r.to_text();
        assert!(text.contains("[fail"));
        assert!(text.contains("3 checks, 1 failed"));
        let back: CheckReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_value(Status::Inconclusive).unwrap(), "inconclusive");
    }
}
