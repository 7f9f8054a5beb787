//! CSV and JSON emission. Numbers in CSV carry 17 significant digits.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;
use crate::report::Entry;

/// Rows of numbers under unit-labelled column names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    /// `key=value` pairs written as a leading `#` line in CSV.
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub metadata: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table {
            metadata: Map::new(),
            columns,
            rows: Vec::new(),
        }
    }

    /// A one-row table from a list of entries.
    pub fn from_entries(entries: &[Entry]) -> Self {
        let mut table = Table::new(entries.iter().map(Entry::column).collect());
        table.rows.push(entries.iter().map(|e| e.value).collect());
        table
    }
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any f64.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn table_csv(table: &Table) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    if !table.metadata.is_empty() {
        let fields: Vec<String> = table
            .metadata
            .iter()
            .map(|(k, v)| match v {
                Value::Number(n) => match n.as_f64() {
                    Some(x) if !n.is_i64() && !n.is_u64() => format!("{k}={}", format_number(x)),
                    _ => format!("{k}={n}"),
                },
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        writeln!(buf, "# {}", fields.join(" ")).expect("write to Vec");
    }
    let mut writer = csv::Writer::from_writer(buf);
    let csv_err = |e: csv::Error| CliError::Numerical(format!("csv encoding failed: {e}"));
    writer.write_record(&table.columns).map_err(csv_err)?;
    for row in &table.rows {
        writer
            .write_record(row.iter().map(|x| format_number(*x)))
            .map_err(csv_err)?;
    }
    writer
        .into_inner()
        .map_err(|e| CliError::Numerical(format!("csv encoding failed: {e}")))
}

pub fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report serializes");
    out.push(b'\n');
    out
}

/// Write to `path`, or to stdout when `None`.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, bytes).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Output {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
