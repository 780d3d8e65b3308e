use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "logsym/1";

/// Outcome of one subcommand: a verdict line plus ordered details.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub passed: bool,
    pub verdict: String,
    pub details: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &'static str, passed: bool, verdict: impl Into<String>) -> Self {
        Report { command, passed, verdict: verdict.into(), details: Vec::new() }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.details.push((key.into(), value.into()));
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.details.push((key.into(), value.into()));
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("{}\n", self.verdict);
        for (k, v) in &self.details {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        out
    }

    pub fn json(&self) -> String {
        // details keep their order as an array of pairs
        let details: Vec<Value> = self.details.iter().map(|(k, v)| json!({ "key": k, "value": v })).collect();
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("command".into(), self.command.into());
        m.insert("passed".into(), self.passed.into());
        m.insert("verdict".into(), self.verdict.clone().into());
        m.insert("details".into(), details.into());
        format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).expect("json"))
    }
}

pub fn error_json(command: &str, message: &str) -> String {
    let v = json!({ "schema": SCHEMA, "command": command, "error": message });
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
}
