use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Text,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// sha256 over the resolved arguments, configuration and input files.
    pub inputs_digest: String,
    /// sha256 over the serialized records.
    pub records_digest: String,
    pub summary: Summary,
    pub records: Vec<Value>,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Build a record with the fields every output line carries.
pub fn record(command: &str, name: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("name".into(), json!(name));
    if let Value::Object(rest) = body {
        m.extend(rest);
    }
    Value::Object(m)
}

impl RunReport {
    /// A record fails when it has `"verdict": false`.
    pub fn new(command: &str, inputs_digest: String, records: Vec<Value>) -> Self {
        let failed = records
            .iter()
            .filter(|r| r.get("verdict") == Some(&Value::Bool(false)))
            .count();
        let serialized: String = records.iter().map(|r| r.to_string() + "\n").collect();
        RunReport {
            command: command.to_string(),
            inputs_digest,
            records_digest: sha256_hex(serialized.as_bytes()),
            summary: Summary {
                records: records.len(),
                passed: records.len() - failed,
                failed,
            },
            exit_code: if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED },
            records,
        }
    }

    fn summary_record(&self) -> Value {
        json!({
            "command": self.command,
            "name": "summary",
            "verdict": self.exit_code == EXIT_OK,
            "records": self.summary.records,
            "passed": self.summary.passed,
            "failed": self.summary.failed,
            "inputs_digest": self.inputs_digest,
            "records_digest": self.records_digest,
            "exit_code": self.exit_code,
        })
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        let all = self.records.iter().chain(std::iter::once(&self.summary_record())).cloned().collect::<Vec<_>>();
        match format {
            Format::Jsonl => {
                for r in &all {
                    let _ = writeln!(out, "{}", r);
                }
            }
            Format::Csv => {
                out.push_str("command,name,verdict,value,detail\n");
                for r in &all {
                    let mut rest = r.as_object().cloned().unwrap_or_default();
                    let take = |m: &mut Map<String, Value>, k: &str| match m.remove(k) {
                        None | Some(Value::Null) => String::new(),
                        Some(Value::String(s)) => s,
                        Some(v) => v.to_string(),
                    };
                    let cols = [
                        take(&mut rest, "command"),
                        take(&mut rest, "name"),
                        take(&mut rest, "verdict"),
                        take(&mut rest, "value"),
                        if rest.is_empty() { String::new() } else { Value::Object(rest).to_string() },
                    ];
                    let line: Vec<String> = cols.iter().map(|c| csv_field(c)).collect();
                    let _ = writeln!(out, "{}", line.join(","));
                }
            }
            Format::Text => {
                for r in &all {
                    let name = r.get("name").and_then(Value::as_str).unwrap_or("");
                    let verdict = match r.get("verdict") {
                        Some(Value::Bool(true)) => "PASS ",
                        Some(Value::Bool(false)) => "FAIL ",
                        _ => "",
                    };
                    let value = match r.get("value") {
                        Some(Value::String(s)) => s.clone(),
                        Some(v) => v.to_string(),
                        None => String::new(),
                    };
                    let _ = writeln!(out, "{}{} {}", verdict, name, value);
                }
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_record_sets_exit_code() {
        let r = RunReport::new(
            "x",
            String::new(),
            vec![record("x", "a", json!({"verdict": true})), record("x", "b", json!({"verdict": false}))],
        );
        assert_eq!(r.exit_code, EXIT_CHECK_FAILED);
        assert_eq!(r.summary.failed, 1);
    }

    #[test]
    fn csv_quotes_detail() {
        let r = RunReport::new("x", String::new(), vec![record("x", "a", json!({"value": 1, "k": [1, 2]}))]);
        let csv = r.render(Format::Csv);
        assert!(csv.lines().nth(1).unwrap().starts_with("x,a,,1,\"{"));
    }
}
