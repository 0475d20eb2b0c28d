use crate::error::CliError;
use serde_json::Value;
use std::fs;
use std::path::{Path, PathBuf};

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn numeric(header: &[&str], rows: Vec<Vec<f64>>) -> Self {
        let mut t = Table::new(header);
        t.rows = rows.into_iter().map(|r| r.into_iter().map(Cell::Num).collect()).collect();
        t
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Result of one subcommand.
pub struct Outcome {
    pub table: Table,
    pub summary: Value,
    /// (name, value) compared against --assert.
    pub metric: (&'static str, f64),
}

pub fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("PJACOBI_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Write `<dir>/<name>.csv` and `<dir>/<name>.json`; returns their paths.
pub fn write(dir: &Path, name: &str, table: &Table, summary: &Value) -> Result<(PathBuf, PathBuf), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let csv_path = dir.join(format!("{name}.csv"));
    let json_path = dir.join(format!("{name}.json"));
    let mut w = csv::Writer::from_path(&csv_path).map_err(|e| io_err(&csv_path, e))?;
    w.write_record(&table.header).map_err(|e| io_err(&csv_path, e))?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).map_err(|e| io_err(&csv_path, e))?;
    }
    w.flush().map_err(|e| io_err(&csv_path, e))?;
    let text = serde_json::to_string_pretty(summary).map_err(|e| io_err(&json_path, e))?;
    fs::write(&json_path, text + "\n").map_err(|e| io_err(&json_path, e))?;
    Ok((csv_path, json_path))
}
