//! The structured report emitted by every subcommand and its plain-text
//! rendering.

use std::fmt::Write as _;
use std::path::Path;

use autgate::claims::{ClaimCheck, ClaimStatus};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &Path, contents: &[u8]) -> Self {
        InputDigest {
            path: path.display().to_string(),
            bytes: contents.len(),
            sha256: format!("{:x}", Sha256::digest(contents)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub unix_time: u64,
    pub elapsed_ms: u128,
}

/// Everything a subcommand reports. `results` holds computed values only;
/// reference values appear in `claims` next to the computed value they are
/// compared with.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    pub claims: Vec<ClaimCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "autgate {}", self.command.join(" "));
        for i in &self.inputs {
            let _ = writeln!(out, "input {} ({} bytes, sha256 {})", i.path, i.bytes, i.sha256);
        }
        render(&mut out, &self.results, 0);
        if !self.claims.is_empty() {
            out.push_str("claims:\n");
            for c in &self.claims {
                let tag = match c.status {
                    ClaimStatus::Match => "match",
                    ClaimStatus::Mismatch => "MISMATCH",
                    ClaimStatus::Flagged => "flagged",
                };
                let _ = writeln!(out, "  [{tag}] {}: {}", c.id, c.claim);
                let _ = writeln!(out, "      expected {}", c.expected);
                let _ = writeln!(out, "      computed {}", c.computed);
            }
        }
        if let Some(m) = &self.meta {
            let _ = writeln!(out, "version {}, {} ms", m.version, m.elapsed_ms);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => {
            Some(format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
