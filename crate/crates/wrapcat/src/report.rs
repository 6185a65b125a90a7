//! Versioned JSON reports and their text rendering.

use std::fmt::Write;

use serde_json::{json, Map, Value};
use wrapcat_core::io::SCHEMA;
use wrapcat_core::Error;

pub struct Report {
    pub command: &'static str,
    pub file: String,
    pub passed: bool,
    pub body: Map<String, Value>,
    pub error: Option<(String, String)>,
    pub exit: u8,
}

impl Report {
    pub fn new(command: &'static str, file: String) -> Self {
        Report {
            command,
            file,
            passed: true,
            body: Map::new(),
            error: None,
            exit: 0,
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.body.insert(key.to_string(), value);
    }

    /// Records a failed check without an error.
    pub fn fail(&mut self) {
        self.passed = false;
        self.exit = self.exit.max(1);
    }

    pub fn error(&mut self, e: &Error) {
        self.passed = false;
        self.exit = if e.is_input_error() { 2 } else { self.exit.max(1) };
        self.error = Some((e.kind().to_string(), e.to_string()));
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("file".into(), json!(self.file));
        m.insert("passed".into(), json!(self.passed));
        if let Some((kind, message)) = &self.error {
            m.insert("error".into(), json!({ "kind": kind, "message": message }));
        }
        for (k, v) in &self.body {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "wrapcat {} {}: {verdict}", self.command, self.file);
        if let Some((kind, message)) = &self.error {
            let _ = writeln!(out, "error: {kind}: {message}");
        }
        for (k, v) in &self.body {
            let _ = writeln!(out);
            let _ = writeln!(out, "[{k}]");
            render(&mut out, v, 0);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(m) if m.values().all(|x| matches!(x, Value::Number(_))) => Some(format!(
            "{{{}}}",
            m.iter().map(|(k, x)| format!("{k}: {x}")).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

const LEADING: [&str; 5] = ["step", "condition", "axiom", "source", "target"];

/// Arrays of flat objects with a shared key set become aligned tables.
fn table(out: &mut String, rows: &[Value], indent: usize) -> bool {
    let Some(Value::Object(first)) = rows.first() else { return false };
    let mut keys: Vec<&String> = first.keys().collect();
    keys.sort_by_key(|k| LEADING.iter().position(|l| l == k).unwrap_or(LEADING.len()));
    let mut cells = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for r in rows {
        let Value::Object(m) = r else { return false };
        if m.len() != keys.len() || !keys.iter().all(|k| m.contains_key(*k)) {
            return false;
        }
        let Some(row) = keys.iter().map(|k| scalar(&m[*k])).collect::<Option<Vec<_>>>() else { return false };
        cells.push(row);
    }
    let widths: Vec<usize> = (0..keys.len())
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    for r in &cells {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}{}", "  ".repeat(indent), line.join("  ").trim_end());
    }
    true
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{s}");
        return;
    }
    match v {
        Value::Array(a) => {
            if a.is_empty() {
                let _ = writeln!(out, "{pad}(none)");
            } else if !table(out, a, indent) {
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        let _ = writeln!(out, "{pad}--");
                    }
                    render(out, x, indent);
                }
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, x, indent + 1);
                    }
                }
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
