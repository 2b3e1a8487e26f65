//! Run reports: one per command invocation, rendered as a human table,
//! canonical JSON, or CSV. Rational values are always exact strings, never
//! decimals. Timing goes to stderr so stdout stays byte-stable across runs
//! and across `--jobs` settings.

use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub location: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub rows: Vec<(String, String)>,
    pub failures: Vec<Failure>,
    /// Structured payload (a coefficient vector or a series) included in the
    /// JSON rendering under its own key.
    pub payload: Option<(String, serde_json::Value)>,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            rows: Vec::new(),
            failures: Vec::new(),
            payload: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn row(&mut self, key: impl ToString, value: impl ToString) -> &mut Self {
        self.rows.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fail(
        &mut self,
        location: impl ToString,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        self.failures.push(Failure {
            location: location.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.render_human(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.push_str(&format!("{} {}\n", self.command, params.join(" ")));
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.rows {
            out.push_str(&format!("  {k:<width$}  {v}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "  FAIL {}: expected {}, got {}\n",
                f.location, f.expected, f.actual
            ));
        }
        out.push_str(&format!("status: {}\n", self.status()));
        out
    }

    fn render_json(&self) -> String {
        let failures: Vec<_> = self
            .failures
            .iter()
            .map(|f| {
                json!({
                    "location": f.location,
                    "expected": f.expected,
                    "actual": f.actual,
                })
            })
            .collect();
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|(k, v)| json!({"key": k, "value": v}))
            .collect();
        let mut value = json!({
            "command": self.command,
            "parameters": self.parameters,
            "data": rows,
            "failures": failures,
            "status": self.status(),
        });
        if let Some((key, payload)) = &self.payload {
            value[key] = payload.clone();
        }
        let mut s = serde_json::to_string_pretty(&value).expect("report is serializable");
        s.push('\n');
        s
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        for (k, v) in &self.rows {
            out.push_str(&format!("{},{}\n", csv_field(k), csv_field(v)));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "{},{}\n",
                csv_field(&format!("FAIL {}", f.location)),
                csv_field(&format!("expected {} got {}", f.expected, f.actual))
            ));
        }
        out.push_str(&format!("status,{}\n", self.status()));
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
