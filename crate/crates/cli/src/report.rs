//! Run reports and their two renderings: prose for people and
//! newline-delimited JSON records for tools.

use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};

use divext::scalar::Scalar;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// The input is malformed or names something that does not exist.
    Input,
    /// The computation refuted a property the run relies on or was asked
    /// to confirm.
    Property,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            kind: FailureKind::Input,
            message: message.into(),
        }
    }

    pub fn property(message: impl Into<String>) -> Self {
        Failure {
            kind: FailureKind::Property,
            message: message.into(),
        }
    }
}

/// One result of a run: a flat JSON object for machine output plus the
/// prose lines that present it.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub kind: &'static str,
    pub fields: Map<String, Value>,
    pub text: Vec<String>,
}

impl Record {
    pub fn new(kind: &'static str) -> Self {
        Record {
            kind,
            fields: Map::new(),
            text: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn line(mut self, line: impl Into<String>) -> Self {
        self.text.push(line.into());
        self
    }
}

pub fn scalars_json(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(Scalar::to_json).collect())
}

pub fn scalars_text(xs: &[Scalar]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub spec: String,
    pub seed: u64,
    pub inputs: Vec<(String, String)>,
    pub records: Vec<Record>,
    pub verdict: Option<String>,
    pub expect: Option<String>,
    pub failure: Option<Failure>,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match &self.failure {
            Some(f) if f.kind == FailureKind::Input => EXIT_INPUT,
            Some(_) => EXIT_PROPERTY,
            None => match (&self.expect, &self.verdict) {
                (Some(e), Some(v)) if e != v => EXIT_PROPERTY,
                _ => EXIT_OK,
            },
        }
    }

    /// Newline-delimited JSON: a `run` header, one record per result, then a
    /// `summary`. Timing is left out so that reruns compare equal.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.clone(), Value::from(v.as_str()))).collect();
        let header = json!({
            "record": "run",
            "command": self.command,
            "spec": self.spec,
            "seed": self.seed,
            "inputs": inputs,
        });
        push_line(&mut out, &header);
        for r in &self.records {
            let mut obj = Map::new();
            obj.insert("record".into(), Value::from(r.kind));
            obj.extend(r.fields.clone());
            push_line(&mut out, &Value::Object(obj));
        }
        if let Some(f) = &self.failure {
            let kind = match f.kind {
                FailureKind::Input => "input",
                FailureKind::Property => "property",
            };
            push_line(&mut out, &json!({"record": "error", "kind": kind, "message": f.message}));
        }
        let summary = json!({
            "record": "summary",
            "verdict": self.verdict,
            "expect": self.expect,
            "exit_code": self.exit_code(),
        });
        push_line(&mut out, &summary);
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} on {} (seed {})", self.command, self.spec, self.seed);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for r in &self.records {
            for line in &r.text {
                let _ = writeln!(out, "{line}");
            }
        }
        if let Some(f) = &self.failure {
            let _ = writeln!(out, "error: {}", f.message);
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        if let Some(e) = &self.expect {
            let met = if self.verdict.as_ref() == Some(e) { "met" } else { "not met" };
            let _ = writeln!(out, "expected: {e} ({met})");
        }
        let _ = writeln!(out, "exit code: {}", self.exit_code());
        let _ = writeln!(out, "elapsed: {:.3} s", self.elapsed.as_secs_f64());
        out
    }
}

fn push_line(out: &mut String, v: &Value) {
    out.push_str(&v.to_string());
    out.push('\n');
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report() -> RunReport {
        RunReport {
            command: "tight".into(),
            spec: "x.spec".into(),
            seed: 7,
            inputs: vec![("embedding".into(), "e".into())],
            records: vec![Record::new("tight")
                .field("a", 1)
                .field("tight", true)
                .line("a = 1: tight")],
            verdict: Some("tight".into()),
            expect: None,
            failure: None,
            elapsed: Duration::from_millis(5),
        }
    }

    #[test]
    fn exit_codes() {
        let mut r = report();
        assert_eq!(r.exit_code(), EXIT_OK);
        r.expect = Some("not-tight".into());
        assert_eq!(r.exit_code(), EXIT_PROPERTY);
        r.failure = Some(Failure::input("bad"));
        assert_eq!(r.exit_code(), EXIT_INPUT);
        r.failure = Some(Failure::property("refuted"));
        assert_eq!(r.exit_code(), EXIT_PROPERTY);
    }

    #[test]
    fn machine_lines() {
        let text = report().render_machine();
        let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["record"], "run");
        assert_eq!(lines[0]["seed"], 7);
        assert_eq!(lines[1], json!({"record": "tight", "a": 1, "tight": true}));
        assert_eq!(lines[2]["exit_code"], 0);
        assert!(!text.contains("elapsed"));
    }

    #[test]
    fn text_mentions_verdict_and_timing() {
        let mut r = report();
        r.expect = Some("tight".into());
        let text = r.render_text();
        assert!(text.contains("a = 1: tight\n"));
        assert!(text.contains("expected: tight (met)"));
        assert!(text.contains("elapsed: 0.005 s"));
    }
}
