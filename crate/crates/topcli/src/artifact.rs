//! CSV tables with JSON sidecars.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Text(x.to_string())
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// `bin_left,bin_right,density`.
    pub fn histogram(h: &chaos_diagnostics::Histogram) -> Self {
        let mut t = Self::new(&["bin_left", "bin_right", "density"]);
        for (l, r, d) in h.bins() {
            t.push(vec![l.into(), r.into(), d.into()]);
        }
        t
    }

    /// `t,value`.
    pub fn curve(times: &[usize], values: &[f64]) -> Self {
        let mut t = Self::new(&["t", "value"]);
        for (&x, &y) in times.iter().zip(values) {
            t.push(vec![x.into(), y.into()]);
        }
        t
    }
}

/// Collects written files for the run summary.
pub struct Writer {
    dir: PathBuf,
    pub written: Vec<PathBuf>,
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

impl Writer {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        Ok(Self { dir: dir.to_path_buf(), written: Vec::new() })
    }

    /// Writes `<stem>.csv` and `<stem>.json`. The sidecar holds `meta` plus the
    /// CSV file name and column list.
    pub fn table(&mut self, stem: &str, table: &Table, meta: &Value) -> Result<(), CliError> {
        let csv_path = self.dir.join(format!("{stem}.csv"));
        let file = fs::File::create(&csv_path).map_err(|e| io_err(&csv_path, e))?;
        let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
        w.write_record(&table.header).map_err(|e| io_err(&csv_path, e))?;
        for row in &table.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(|e| io_err(&csv_path, e))?;
        }
        w.flush().map_err(|e| io_err(&csv_path, e))?;
        self.written.push(csv_path);
        let mut side = meta.clone();
        if let Value::Object(m) = &mut side {
            m.insert("file".into(), json!(format!("{stem}.csv")));
            m.insert("columns".into(), json!(table.header));
            m.insert("rows".into(), json!(table.rows.len()));
        }
        self.json(stem, &side)
    }

    pub fn json(&mut self, stem: &str, value: &impl Serialize) -> Result<(), CliError> {
        let path = self.dir.join(format!("{stem}.json"));
        let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| io_err(&path, e))?;
        self.written.push(path);
        Ok(())
    }
}
