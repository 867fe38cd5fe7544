//! Report records with provenance and deterministic serialization.
//!
//! Every record carries the configuration hash of the run that produced it,
//! and serialization is byte-stable: identical configurations produce
//! identical reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// One named result.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub name: String,
    pub value: RecordValue,
    /// Free-form qualifier (grid sizes, truncation radii, indices).
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum RecordValue {
    Float(f64),
    Int(i64),
    Text(String),
}

impl std::fmt::Display for RecordValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RecordValue::Float(x) => write!(f, "{x:?}"),
            RecordValue::Int(i) => write!(f, "{i}"),
            RecordValue::Text(s) => write!(f, "{s}"),
        }
    }
}

/// Full report of one command run.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config_hash: String,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: impl Into<String>, config_hash: String) -> Self {
        Self {
            command: command.into(),
            config_hash,
            records: Vec::new(),
        }
    }

    pub fn float(&mut self, name: impl Into<String>, value: f64, detail: impl Into<String>) {
        self.records.push(Record {
            name: name.into(),
            value: RecordValue::Float(value),
            detail: detail.into(),
        });
    }

    pub fn int(&mut self, name: impl Into<String>, value: i64, detail: impl Into<String>) {
        self.records.push(Record {
            name: name.into(),
            value: RecordValue::Int(value),
            detail: detail.into(),
        });
    }

    pub fn text(
        &mut self,
        name: impl Into<String>,
        value: impl Into<String>,
        detail: impl Into<String>,
    ) {
        self.records.push(Record {
            name: name.into(),
            value: RecordValue::Text(value.into()),
            detail: detail.into(),
        });
    }

    /// CSV with a header row; floats use the shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("record,value,detail,command,config_hash\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_escape(&r.name),
                csv_escape(&r.value.to_string()),
                csv_escape(&r.detail),
                csv_escape(&self.command),
                self.config_hash
            ));
        }
        out
    }

    /// JSON mirroring the CSV records.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible") + "\n"
    }

    pub fn lookup(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// SHA-256 of the canonical JSON form of a configuration.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let canonical = serde_json::to_string(config).expect("config serialization is infallible");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
