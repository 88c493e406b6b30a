//! Tabular reports written as CSV or JSON.

use std::io::Write;

use anyhow::Result;
use serde_json::{Map, Value};

use crate::cli::Format;

/// A table of rows plus the outcome of any check it carries. `pass` is `None` for plain
/// computations.
#[derive(Debug, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub pass: Option<bool>,
    /// Human-readable notes for stderr, one per failing check.
    pub failures: Vec<String>,
    /// A standalone JSON document written instead of the table.
    pub document: Option<Value>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), ..Self::default() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Record a check; the report passes only if every check does.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.pass = Some(self.pass.unwrap_or(true) && ok);
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn document(doc: Value) -> Self {
        Self { document: Some(doc), ..Self::default() }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        if let Some(doc) = &self.document {
            serde_json::to_writer_pretty(&mut *out, doc)?;
            writeln!(out)?;
            return Ok(());
        }
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(cell))?;
                }
                w.flush()?;
            }
            Format::Json => {
                // one row per line keeps large tables diffable
                let pass = self.pass.map_or(Value::Null, Value::Bool);
                writeln!(out, "{{\"pass\": {pass}, \"rows\": [")?;
                for (i, row) in self.rows.iter().enumerate() {
                    let obj: Map<String, Value> =
                        self.columns.iter().map(|c| c.to_string()).zip(row.iter().cloned()).collect();
                    let sep = if i + 1 < self.rows.len() { "," } else { "" };
                    writeln!(out, "  {}{sep}", serde_json::to_string(&Value::Object(obj))?)?;
                }
                writeln!(out, "]}}")?;
            }
        }
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// A float cell. Non-finite values become strings since JSON has no literal for them.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(x.to_string())
    }
}

pub fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}
