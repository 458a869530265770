//! Report trees, rendered as canonical JSON or as indented text.

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "coxlab-report/1";

/// Process exit status, in increasing severity for batch merging:
/// ok < truncated < failures < unsupported < input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok,
    Failures,
    InputError,
    Unsupported,
    Truncated,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Failures => 1,
            ExitStatus::InputError => 2,
            ExitStatus::Unsupported => 3,
            ExitStatus::Truncated => 4,
        }
    }

    fn severity(self) -> u8 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Truncated => 1,
            ExitStatus::Failures => 2,
            ExitStatus::Unsupported => 3,
            ExitStatus::InputError => 4,
        }
    }

    pub fn worst(self, other: ExitStatus) -> ExitStatus {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExitStatus::Ok => "ok",
            ExitStatus::Failures => "failures",
            ExitStatus::InputError => "input-error",
            ExitStatus::Unsupported => "unsupported",
            ExitStatus::Truncated => "truncated",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: ExitStatus,
    pub result: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub fn new(command: &str, status: ExitStatus, result: Value) -> Self {
        Report { command: command.into(), status, result }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "status": self.status.name(),
            "exit_code": self.status.code(),
            "result": self.result,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                render_map(self.to_value().as_object().expect("report is an object"), 0, &mut out);
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_map(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        match scalar(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_value(v, depth + 1, out);
            }
        }
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => render_map(m, depth, out),
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
