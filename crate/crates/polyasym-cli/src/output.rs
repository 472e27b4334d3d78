//! Table rendering: aligned text, CSV with minimal quoting, and JSON.
//!
//! Every renderer is deterministic: identical tables produce byte-identical
//! output, which the report bundles rely on.

use std::fs;
use std::path::Path;

use crate::run::CliError;

/// Output format selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// One table cell. Integer cells stay JSON numbers; everything else is
/// pre-rendered text. `Empty` is a blank CSV field, a JSON `null`, and `-`
/// in aligned text.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// A column-labelled table produced by one subcommand.
#[derive(Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| {
                        let t = cell.text();
                        if t.is_empty() { "-".to_string() } else { t }
                    })
                    .collect()
            })
            .collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        let header: Vec<String> = self
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(header.join("  ").trim_end());
        out.push('\n');
        for row in &rows {
            let line: Vec<String> =
                row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_field(&c.text())).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = serde_json::Map::new();
                for (column, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Int(v) => serde_json::Value::from(*v),
                        Cell::Text(s) => serde_json::Value::from(s.as_str()),
                        Cell::Empty => serde_json::Value::Null,
                    };
                    object.insert((*column).to_string(), value);
                }
                serde_json::Value::Object(object)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&serde_json::Value::Array(rows))
            .expect("tables serialize to JSON");
        text.push('\n');
        text
    }
}

/// Quotes a CSV field only when necessary: embedded comma/quote/newline, or a
/// trailing `i` (a complex value rendered `re+imi` travels as one quoted
/// field).
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.ends_with('i') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Prints to stdout, or writes the `--out` file.
pub fn emit(rendered: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}
