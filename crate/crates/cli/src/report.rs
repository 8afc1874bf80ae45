//! Reports and their two renderings.
//!
//! JSON objects use `serde_json`'s default map, which keeps keys sorted, so the
//! same report always serializes to the same bytes.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use weilforge::{QuadInt, Rational};

pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Map<String, Value>,
    pub provenance: Vec<(&'static str, &'static str)>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: Map::new(),
            result: Map::new(),
            provenance: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_owned(), value.into());
    }

    pub fn cite(&mut self, claim: &'static str, source: &'static str) {
        self.provenance.push((claim, source));
    }

    pub fn to_json(&self) -> String {
        let provenance: Vec<Value> = self
            .provenance
            .iter()
            .map(|(c, s)| json!({ "claim": c, "source": s }))
            .collect();
        let v = json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "result": Value::Object(self.result.clone()),
            "provenance": provenance,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar_text(v)))
            .collect();
        out.push_str(&format!("inputs: {}\n", inputs.join(" ")));
        let mut lines = Vec::new();
        flatten("", &Value::Object(self.result.clone()), &mut lines);
        for (k, v) in lines {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for (c, s) in &self.provenance {
            out.push_str(&format!("provenance: {c} [{s}]\n"));
        }
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) if items.iter().all(is_scalar) => {
            items.iter().map(scalar_text).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

/// Dotted paths for nested objects and arrays; arrays of scalars stay on one line.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_owned()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, child) in m {
                flatten(&key(k), child, out);
            }
        }
        Value::Array(items) if !items.iter().all(is_scalar) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), child, out);
            }
        }
        other => out.push((prefix.to_owned(), scalar_text(other))),
    }
}

/// `num/den` in lowest terms, also for integers.
pub fn rational(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn quad(a: &QuadInt) -> Value {
    json!({
        "x": big(a.x()),
        "y": big(a.y()),
        "text": a.to_string(),
    })
}
