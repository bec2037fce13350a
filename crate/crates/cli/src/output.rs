//! Tabular and document output in CSV or JSON.

use std::io::Write;

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// 17 significant digits, which round-trips every `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) => float_value(*v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// Non-finite values become `null`.
pub fn float_value(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

/// A result table with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Table {
            command,
            parameters: Map::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": Value::Object(self.parameters.clone()),
            "columns": self.columns,
            "rows": self.rows.iter()
                .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                .collect::<Vec<_>>(),
        })
    }
}

/// What a command produces.
#[derive(Debug, Clone)]
pub enum Output {
    Table(Table),
    /// A single JSON document; CSV renders it through `table`.
    Document { json: Value, table: Table },
}

impl Output {
    pub fn render(&self, format: crate::Format) -> std::io::Result<Vec<u8>> {
        let mut buf = Vec::new();
        match (self, format) {
            (Output::Table(t) | Output::Document { table: t, .. }, crate::Format::Csv) => {
                t.write_csv(&mut buf)?
            }
            (Output::Table(t), crate::Format::Json) => {
                serde_json::to_writer_pretty(&mut buf, &t.to_json())?;
                buf.push(b'\n');
            }
            (Output::Document { json, .. }, crate::Format::Json) => {
                serde_json::to_writer_pretty(&mut buf, json)?;
                buf.push(b'\n');
            }
        }
        Ok(buf)
    }
}
