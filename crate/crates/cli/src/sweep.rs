//! One-dimensional parameter sweeps, evaluated in parallel and assembled in
//! input order.

use rayon::prelude::*;
use serde_json::Value;

use rydline::units::{parse_quantity, to_lab_units};

use crate::config::{self, LoadedConfig, SWEEPABLE};
use crate::error::CliError;
use crate::output::Table;
use crate::report::{budget, budget_entries, estimate, Entry};
use crate::setup::resolve;

/// Result of a sweep: the table plus per-point warnings, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub table: Table,
    pub warnings: Vec<String>,
}

fn axis_entry(axis: &str, raw: &Value) -> Result<Entry, CliError> {
    match raw {
        Value::Number(n) => Ok(Entry {
            key: axis.to_string(),
            value: n.as_f64().unwrap_or(f64::NAN),
            unit: "1".into(),
        }),
        Value::String(s) => {
            let q = parse_quantity(s)
                .map_err(|e| CliError::Usage(format!("sweep value `{s}` for {axis}: {e}")))?;
            let (value, unit) = to_lab_units(q);
            Ok(Entry {
                key: axis.to_string(),
                value,
                unit: unit.into(),
            })
        }
        other => Err(CliError::Usage(format!(
            "sweep value `{other}` for {axis} is not numeric"
        ))),
    }
}

fn point(
    loaded: &LoadedConfig,
    axis: &str,
    raw: &Value,
) -> Result<(Vec<Entry>, Vec<String>), CliError> {
    let mut tree = config::to_value(&loaded.config);
    config::set_path(&mut tree, axis, raw.clone())?;
    let local = loaded.with_config(config::from_json(tree)?);
    let setup = resolve(&local)?;
    let mut entries = vec![axis_entry(axis, raw)?];
    entries.extend(estimate(&setup)?);
    for e in budget_entries(&budget(&setup)?) {
        if !entries.iter().any(|x| x.key == e.key) {
            entries.push(e);
        }
    }
    Ok((entries, setup.warnings))
}

/// Evaluate the estimate and budget at each value of `axis`.
///
/// `values` are config literals: numbers or lab-unit strings.
pub fn sweep(loaded: &LoadedConfig, axis: &str, values: &[String]) -> Result<Sweep, CliError> {
    if !SWEEPABLE.contains(&axis) {
        return Err(CliError::Usage(format!(
            "`{axis}` is not sweepable; sweepable fields: {}",
            SWEEPABLE.join(", ")
        )));
    }
    if values.is_empty() {
        return Err(CliError::Usage("sweep needs at least one value".into()));
    }
    let raw: Vec<Value> = values
        .iter()
        .map(|v| config::parse_scalar(v.trim()))
        .collect();
    let points: Vec<_> = raw.par_iter().map(|v| point(loaded, axis, v)).collect();

    let mut table: Option<Table> = None;
    let mut warnings = Vec::new();
    for (i, result) in points.into_iter().enumerate() {
        let (entries, point_warnings) = result.map_err(|e| {
            let detail = format!("sweep point {i} ({axis} = {}): {e}", values[i].trim());
            match e.exit_code() {
                crate::error::EXIT_NUMERICAL => CliError::Numerical(detail),
                _ => CliError::Config(detail),
            }
        })?;
        warnings.extend(
            point_warnings
                .into_iter()
                .map(|w| format!("sweep point {i} ({axis} = {}): {w}", values[i].trim())),
        );
        let columns: Vec<String> = entries.iter().map(Entry::column).collect();
        let t = table.get_or_insert_with(|| Table::new(columns.clone()));
        if t.columns != columns {
            return Err(CliError::Usage(format!(
                "sweep point {i} changes the column layout; give all values of {axis} in one unit family"
            )));
        }
        t.rows.push(entries.iter().map(|e| e.value).collect());
    }
    let mut table = table.expect("at least one point");
    table.metadata.insert("axis".into(), axis.into());
    Ok(Sweep { table, warnings })
}
