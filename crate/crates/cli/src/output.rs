//! Tabular output with a run manifest, and the matching reader.
//!
//! CSV files start with `# key: <json>` manifest lines followed by a header
//! row. Numbers are written with 17 significant digits so every value parses
//! back to the identical double. JSON files hold the same table as an object.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// One table cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Missing,
    Flag(bool),
    Number(f64),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Number(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cell::Flag(b) => Some(*b),
            _ => None,
        }
    }

    fn to_csv_field(&self) -> String {
        match self {
            Cell::Missing => String::new(),
            Cell::Flag(b) => b.to_string(),
            Cell::Number(x) => format!("{x:.16e}"),
        }
    }

    fn from_csv_field(s: &str) -> Result<Self, CliError> {
        match s {
            "" => Ok(Cell::Missing),
            "true" => Ok(Cell::Flag(true)),
            "false" => Ok(Cell::Flag(false)),
            _ => s.parse().map(Cell::Number).map_err(|_| CliError::Format(format!("unparseable cell {s:?}"))),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Number(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Flag(b)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Number)
    }
}

/// Provenance written alongside every data file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub timestamp: String,
    pub quadrature_order: usize,
    pub tolerances: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>) -> Self {
        use xxring::{criticality, teleport, verify};
        let tolerances = BTreeMap::from([
            ("root_relative".to_string(), criticality::ROOT_TOL),
            ("min_branch_probability".to_string(), teleport::MIN_BRANCH_PROBABILITY),
            ("thermal_state_oracle".to_string(), verify::THERMAL_STATE_TOL),
            ("concurrence_oracle".to_string(), verify::CONCURRENCE_TOL),
            ("fidelity_oracle".to_string(), verify::FIDELITY_TOL),
        ]);
        Self {
            tool: "xxring".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            parameters,
            timestamp: timestamp(),
            quadrature_order: teleport::QUADRATURE_ORDER,
            tolerances,
        }
    }
}

/// RFC 3339 time, taken from SOURCE_DATE_EPOCH when set.
fn timestamp() -> String {
    let time = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .map(|secs| UNIX_EPOCH + Duration::from_secs(secs))
        .unwrap_or_else(SystemTime::now);
    humantime::format_rfc3339_seconds(time).to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub manifest: RunManifest,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let manifest = serde_json::to_value(&self.manifest).map_err(|e| CliError::Format(e.to_string()))?;
        if let Value::Object(fields) = manifest {
            for (key, value) in fields {
                writeln!(out, "# {key}: {value}")?;
            }
        }
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::to_csv_field)).map_err(csv_error)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut *out, self).map_err(|e| CliError::Format(e.to_string()))?;
        writeln!(out)?;
        Ok(())
    }

    pub fn read_csv(text: &str) -> Result<Self, CliError> {
        let mut fields = serde_json::Map::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let (key, value) = line[1..]
                .trim_start()
                .split_once(": ")
                .ok_or_else(|| CliError::Format(format!("malformed manifest line {line:?}")))?;
            let value: Value = serde_json::from_str(value).map_err(|e| CliError::Format(e.to_string()))?;
            fields.insert(key.to_string(), value);
        }
        let manifest: RunManifest =
            serde_json::from_value(Value::Object(fields)).map_err(|e| CliError::Format(format!("manifest: {e}")))?;

        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let columns = reader.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(csv_error)?;
            rows.push(record.iter().map(Cell::from_csv_field).collect::<Result<_, _>>()?);
        }
        Ok(Self { manifest, columns, rows })
    }

    pub fn read_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))
    }

    /// Reads either format, choosing by the first non-blank character.
    pub fn read(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            Self::read_json(text)
        } else {
            Self::read_csv(text)
        }
    }
}

fn csv_error(e: csv::Error) -> CliError {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            _ => unreachable!(),
        }
    } else {
        CliError::Format(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let params = BTreeMap::from([("J".to_string(), Value::from(-1.0))]);
        Table {
            manifest: RunManifest::new("sweep", params),
            columns: vec!["J".into(), "T".into(), "advantage".into(), "t2".into()],
            rows: vec![
                vec![Cell::Number(-1.0), Cell::Number(0.1 + 0.2), Cell::Flag(true), Cell::Missing],
                vec![Cell::Number(-1.0), Cell::Number(1.0 / 3.0), Cell::Flag(false), Cell::Number(f64::MIN_POSITIVE)],
            ],
        }
    }

    #[test]
    fn csv_round_trip_is_lossless() {
        let table = sample();
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# "));
        assert!(text.contains("\nJ,T,advantage,t2\n"));
        assert_eq!(Table::read(&text).unwrap(), table);
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let table = sample();
        let mut buf = Vec::new();
        table.write_json(&mut buf).unwrap();
        assert_eq!(Table::read(std::str::from_utf8(&buf).unwrap()).unwrap(), table);
    }

    #[test]
    fn json_floats_parse_back_exactly() {
        let mut table = sample();
        table.rows =
            (1..2000).map(|k| vec![Cell::Number((k as f64).sqrt() / 7.0), Cell::Number(1.0 / k as f64)]).collect();
        table.columns = vec!["a".into(), "b".into()];
        let mut buf = Vec::new();
        table.write_json(&mut buf).unwrap();
        assert_eq!(Table::read_json(std::str::from_utf8(&buf).unwrap()).unwrap(), table);
    }

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(Cell::Number(0.1).to_csv_field(), "1.0000000000000001e-1");
        assert_eq!(Cell::Number(-2.0).to_csv_field(), "-2.0000000000000000e0");
    }

    #[test]
    fn manifest_timestamp_is_rfc3339() {
        let ts = timestamp();
        assert!(ts.ends_with('Z') && ts.contains('T'), "{ts}");
    }

    #[test]
    fn malformed_cells_are_rejected() {
        assert!(Cell::from_csv_field("abc").is_err());
        assert_eq!(Cell::from_csv_field("").unwrap(), Cell::Missing);
    }
}
