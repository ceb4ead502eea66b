//! Verification reports: a named check, its parameters, a pass flag, and
//! the residuals that should have vanished (empty when the check passes).

use serde_json::{json, Map, Value};

use crate::format::OutFormat;

#[derive(Debug, Clone)]
pub struct Report {
    pub check: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    /// One entry per failed sub-check; exact residual data, never rounded.
    pub residuals: Vec<Value>,
    /// Human-readable findings that accompany the verdict either way.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report {
            check: check.to_string(),
            params: Map::new(),
            pass: true,
            residuals: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: Value) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn fail(&mut self, residual: Value) {
        self.pass = false;
        self.residuals.push(residual);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "params": self.params,
            "pass": self.pass,
            "residuals": self.residuals,
            "notes": self.notes,
        })
    }

    pub fn render(&self, fmt: OutFormat) -> String {
        match fmt {
            OutFormat::Json => self.to_json().to_string(),
            // failed checks are rare enough that text and latex agree
            OutFormat::Text | OutFormat::Latex => {
                let mut out = format!(
                    "{}: {} ({})",
                    self.check,
                    if self.pass { "PASS" } else { "FAIL" },
                    serde_json::to_string(&self.params).unwrap_or_default()
                );
                for n in &self.notes {
                    out.push_str(&format!("\n  note: {n}"));
                }
                for r in &self.residuals {
                    out.push_str(&format!("\n  residual: {r}"));
                }
                out
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}
