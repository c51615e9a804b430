//! Command results: a JSON tree plus a plain-text rendering of the same tree.

use std::fmt::Write as _;

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A mathematical precondition fails; the message says which command to run instead.
    Refused(String),
    /// A bounded search ran out before finding what it needed.
    BoundExhausted(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub body: Value,
}

impl Report {
    pub fn success(command: &'static str, body: Value) -> Self {
        Report { command, status: Status::Success, body }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Success => 0,
            Status::Refused(_) => 1,
            Status::BoundExhausted(_) => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let (status, message) = match &self.status {
            Status::Success => ("ok", None),
            Status::Refused(m) => ("refused", Some(m.clone())),
            Status::BoundExhausted(m) => ("bound-exhausted", Some(m.clone())),
        };
        let mut v = json!({ "command": self.command, "status": status });
        if let Some(m) = message {
            v["message"] = Value::String(m);
        }
        v["result"] = self.body.clone();
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        render(&self.to_json(), 0, &mut s);
        s
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

/// Short arrays of scalars go on one line.
fn inline_array(v: &Value) -> Option<String> {
    let a = v.as_array()?;
    let parts: Option<Vec<String>> = a.iter().map(|x| if x.is_array() || x.is_object() { None } else { scalar(x) }).collect();
    let line = format!("[{}]", parts?.join(", "));
    (line.len() <= 80).then_some(line)
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if let Some(s) = scalar(x).or_else(|| inline_array(x)) {
                    let _ = writeln!(out, "{pad}{k}: {s}");
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if let Some(s) = scalar(x).or_else(|| inline_array(x)) {
                    let _ = writeln!(out, "{pad}- {s}");
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render(x, indent + 1, out);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
