//! Tables rendered as canonical JSON or CSV.

use std::io::Write;

use qeuler_core::rational::{format, Rational};
use serde_json::{Map, Value};

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Table {
    pub command: &'static str,
    pub params: Row,
    /// CSV column order; JSON keys are always sorted.
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    pub pass: Option<bool>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self { command, params: Row::new(), columns, rows: Vec::new(), pass: None }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut top = Row::new();
        top.insert("command".into(), self.command.into());
        top.insert("params".into(), Value::Object(self.params.clone()));
        top.insert("rows".into(), Value::Array(self.rows.iter().cloned().map(Value::Object).collect()));
        if let Some(pass) = self.pass {
            top.insert("pass".into(), pass.into());
        }
        serde_json::to_string_pretty(&Value::Object(top)).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            let cells: Vec<String> = self.columns.iter().map(|c| cell(row.get(*c))).collect();
            w.write_record(&cells).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn print(&self, format: Format) {
        let text = match format {
            Format::Json => self.to_json() + "\n",
            Format::Csv => self.to_csv(),
        };
        let mut out = std::io::stdout().lock();
        // A closed pipe is not an error worth reporting.
        let _ = out.write_all(text.as_bytes());
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format(r))
}

/// Non-finite floats have no JSON form; they become `null`.
pub fn float(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}
