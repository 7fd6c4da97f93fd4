//! Report emission: CSV with 12-significant-digit numbers, JSON with full
//! round-trip precision. Every table echoes the inputs that produced it.

use serde::Serialize;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format `{other}` (csv|json)")),
        }
    }
}

/// 12 significant digits, the cache/CSV precision.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// A rectangular table with a stable column order.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Table {
            title: title.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "# {}", self.title)?;
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| sig12(x)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Emit either CSV tables or a single JSON document to the writer.
pub fn emit(
    format: OutputFormat,
    tables: &[Table],
    json_value: &impl Serialize,
    w: &mut impl Write,
) -> anyhow::Result<()> {
    match format {
        OutputFormat::Csv => {
            for t in tables {
                t.write_csv(w)?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, json_value)?;
            writeln!(w)?;
        }
    }
    Ok(())
}
