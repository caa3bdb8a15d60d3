//! Report assembly and emission: schema-versioned JSON, DOT Hasse
//! diagrams, and human-readable text. All output is canonically ordered,
//! so identical invocations produce identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Provenance {
    pub library_version: String,
    pub schema_version: u32,
    pub spec_hash: String,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(command: &str, inputs: &[(&str, String)], results: Value, hashed: &str) -> Report {
        let mut map = BTreeMap::new();
        for (k, v) in inputs {
            map.insert((*k).to_string(), v.clone());
        }
        let mut hasher = Sha256::new();
        hasher.update(hashed.as_bytes());
        let spec_hash = format!("{:x}", hasher.finalize());
        Report {
            command: command.to_string(),
            inputs: map,
            results,
            provenance: Provenance {
                library_version: klab_core::VERSION.to_string(),
                schema_version: SCHEMA_VERSION,
                spec_hash,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text rendering: one "key: value" block per top-level result.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("input {k}: {v}\n"));
        }
        render_text(&mut out, "", &self.results);
        out
    }
}

fn render_text(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(out, &key, val);
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                render_text(out, &format!("{prefix}[{i}]"), val);
            }
        }
        other => {
            out.push_str(&format!("{prefix}: {other}\n"));
        }
    }
}

/// A poset rendered as a DOT Hasse diagram: nodes labeled by Newton
/// points (or index-set elements), edges the covering relations upward.
pub fn poset_dot(title: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{title}\" {{\n"));
    out.push_str("  rankdir=BT;\n");
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{l}\"];\n"));
    }
    for (a, b) in edges {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn q_str(x: &num::BigRational) -> String {
    use num::One;
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn vec_str(v: &klab_core::RatVector) -> String {
    v.to_string()
}
