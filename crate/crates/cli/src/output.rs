//! Tabular results rendered as CSV or versioned JSON.
//!
//! CSV floats use `{:.16e}` (17 significant digits), which round-trips
//! every finite `f64`. JSON numbers use the shortest round-trip form.

use serde_json::{json, Map, Value};

use crate::config::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    UInt(u64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::UInt(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::UInt(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Run parameters, emitted in JSON only.
    pub meta: Map<String, Value>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
            meta: Map::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => render_csv(table),
        Format::Json => render_json(table),
    }
}

fn render_csv(table: &Table) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn render_json(table: &Table) -> String {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| (c.to_string(), v.json()))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": table.command,
        "parameters": table.meta,
        "columns": table.columns,
        "rows": rows,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("finite values serialize");
    out.push('\n');
    out
}
