//! Table output: CSV and JSON emitters with deterministic formatting,
//! plus atomic file writes.
//!
//! Floats are serialized with 17 significant digits so values round-trip
//! exactly. Non-finite values print as `inf`, `-inf`, `NaN`; in JSON they
//! are emitted as strings (standard JSON has no number syntax for them).

use crate::error::Result;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone)]
pub enum Field {
    Int(i64),
    Float(f64),
    Str(String),
}

/// A rectangular table with fixed, ordered columns.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// 17-significant-digit decimal form of a float.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    format!("{x:.16e}")
}

fn field_csv(f: &Field) -> String {
    match f {
        Field::Int(v) => v.to_string(),
        Field::Float(v) => format_float(*v),
        Field::Str(s) => s.clone(),
    }
}

fn field_json(f: &Field) -> String {
    match f {
        Field::Int(v) => v.to_string(),
        Field::Float(v) if v.is_finite() => format_float(*v),
        Field::Float(v) => format!("\"{}\"", format_float(*v)),
        Field::Str(s) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
    }
}

/// CSV: UTF-8, header row, comma delimiter, `.` decimal point, LF endings.
pub fn to_csv(table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(field_csv).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// JSON: an array of row objects keyed by column name.
pub fn to_json(table: &Table) -> String {
    let mut out = String::from("[\n");
    for (i, row) in table.rows.iter().enumerate() {
        out.push_str("  {");
        for (j, (name, field)) in table.columns.iter().zip(row).enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{name}\": {}", field_json(field));
        }
        out.push('}');
        if i + 1 < table.rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => to_csv(table),
        Format::Json => to_json(table),
    }
}

/// Writes through a temporary sibling file and renames into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, contents)?;
    match fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(e.into())
        }
    }
}
