//! Table rendering. Every number goes through `Display` for `f64`, which
//! prints the shortest round-tripping representation, so identical inputs
//! always give identical bytes.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A rectangular table of pre-formatted cells.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(v) if v.is_finite() => serde_json::json!(v),
            Cell::Num(v) => serde_json::Value::String(v.to_string()),
            Cell::Text(s) => serde_json::Value::String(s.clone()),
        }
    }
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::text))?;
                }
                w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
            }
            Format::Json => {
                let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|row| self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect())
                    .collect();
                let mut out = serde_json::to_vec_pretty(&rows).map_err(|e| CliError::Io(e.into()))?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Text => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|i| cells.iter().map(|r| r[i].len()).chain([self.columns[i].len()]).max().unwrap_or(0))
                    .collect();
                let mut out = String::new();
                for line in std::iter::once(&self.columns).chain(cells.iter()) {
                    let padded: Vec<String> =
                        line.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    out.push_str(padded.join("  ").trim_end());
                    out.push('\n');
                }
                Ok(out.into_bytes())
            }
        }
    }
}

/// Writes `bytes` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["x", "label"]);
        t.push(vec![0.1.into(), "a,b".into()]);
        t.push(vec![f64::INFINITY.into(), "c".into()]);
        t
    }

    #[test]
    fn csv_quotes_and_round_trips_numbers() {
        let text = String::from_utf8(sample().render(Format::Csv).unwrap()).unwrap();
        assert_eq!(text, "x,label\n0.1,\"a,b\"\ninf,c\n");
    }

    #[test]
    fn json_rows_are_objects() {
        let v: serde_json::Value = serde_json::from_slice(&sample().render(Format::Json).unwrap()).unwrap();
        assert_eq!(v[0]["x"], 0.1);
        assert_eq!(v[1]["x"], "inf");
    }
}
