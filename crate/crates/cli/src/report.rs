//! Machine-readable reports and their plain-text rendering.

use hodgegauge_core::linalg::format_scalar;
use hodgegauge_core::Obstruction;
use serde::Serialize;
use serde_json::{Map, Value};

/// First nonzero entry of something that should vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: usize,
    pub degree: i32,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

impl From<&Obstruction> for Witness {
    fn from(o: &Obstruction) -> Self {
        Witness { n: o.n, degree: o.degree, row: o.row, col: o.col, value: format_scalar(&o.value) }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n = {}, source degree {}, entry ({}, {}) = {}", self.n, self.degree, self.row, self.col, self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Checks plus named data, in insertion order. Contains no timing, so equal
/// inputs give byte-identical JSON.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), passed: true, checks: Vec::new(), data: Map::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> &mut Check {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, witness: None, detail: None });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn check_witness(&mut self, name: impl Into<String>, witness: Option<&Obstruction>) {
        let c = self.check(name, witness.is_none());
        c.witness = witness.map(Witness::from);
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("report data serializes"));
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, if self.passed { "PASS" } else { "FAIL" });
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  (witness: {w})"));
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        for (key, value) in &self.data {
            match value {
                Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
                    out.push_str(&format!("{key}:\n"));
                    for item in items {
                        out.push_str(&format!("  {}\n", compact(item)));
                    }
                }
                _ => out.push_str(&format!("{key}: {}\n", compact(value))),
            }
        }
        out
    }
}

fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
