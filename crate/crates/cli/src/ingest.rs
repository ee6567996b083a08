//! Reading one numeric column from CSV (with header) or JSON lines.
//!
//! Cells that do not parse as a decimal real become NaN, so they are
//! counted as nonfinite skips downstream instead of aborting the run.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Csv,
    Jsonl,
}

impl InputFormat {
    pub fn name(self) -> &'static str {
        match self {
            InputFormat::Csv => "csv",
            InputFormat::Jsonl => "jsonl",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IngestOptions {
    pub path: PathBuf,
    pub format: InputFormat,
    /// Field name, or zero-based index when no field has that name.
    pub column: String,
    pub absolute_value: bool,
}

pub fn read_column(opts: &IngestOptions) -> Result<Vec<f64>, CliError> {
    let file = File::open(&opts.path).map_err(|source| io_error(&opts.path, source))?;
    let values = match opts.format {
        InputFormat::Csv => read_csv(file, opts)?,
        InputFormat::Jsonl => read_jsonl(file, opts)?,
    };
    Ok(if opts.absolute_value {
        values.into_iter().map(f64::abs).collect()
    } else {
        values
    })
}

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_cell(text: &str) -> f64 {
    text.trim().parse().unwrap_or(f64::NAN)
}

fn resolve<'a>(names: impl Iterator<Item = &'a str> + Clone, column: &str) -> Option<usize> {
    if let Some(i) = names.clone().position(|n| n == column) {
        return Some(i);
    }
    let i: usize = column.parse().ok()?;
    (i < names.count()).then_some(i)
}

fn missing_column(opts: &IngestOptions) -> CliError {
    CliError::Data(format!(
        "{}: no column '{}'",
        opts.path.display(),
        opts.column
    ))
}

fn read_csv(file: File, opts: &IngestOptions) -> Result<Vec<f64>, CliError> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(file);
    let csv_error = |e: csv::Error| CliError::Data(format!("{}: {e}", opts.path.display()));
    let headers = reader.headers().map_err(csv_error)?.clone();
    let idx = resolve(headers.iter(), &opts.column).ok_or_else(|| missing_column(opts))?;
    let mut out = Vec::new();
    for record in reader.records() {
        match record {
            Ok(r) => out.push(r.get(idx).map_or(f64::NAN, parse_cell)),
            Err(e) if e.is_io_error() => return Err(csv_error(e)),
            // Malformed rows (bad UTF-8 and the like) count as dirty cells.
            Err(_) => out.push(f64::NAN),
        }
    }
    Ok(out)
}

fn read_jsonl(file: File, opts: &IngestOptions) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    let mut seen_column = false;
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|source| io_error(&opts.path, source))?;
        if line.trim().is_empty() {
            continue;
        }
        let value = match serde_json::from_str::<Value>(&line) {
            Ok(Value::Object(map)) => match resolve(map.keys().map(String::as_str), &opts.column) {
                Some(i) => {
                    seen_column = true;
                    match map.values().nth(i).expect("index came from the keys") {
                        Value::Number(n) => n.as_f64().unwrap_or(f64::NAN),
                        Value::String(s) => parse_cell(s),
                        _ => f64::NAN,
                    }
                }
                None => f64::NAN,
            },
            _ => f64::NAN,
        };
        out.push(value);
    }
    if !seen_column {
        return Err(missing_column(opts));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_resolution() {
        let names = ["a", "2", "b"];
        assert_eq!(resolve(names.iter().copied(), "b"), Some(2));
        assert_eq!(resolve(names.iter().copied(), "0"), Some(0));
        // A header literally named "2" wins over index 2.
        assert_eq!(resolve(names.iter().copied(), "2"), Some(1));
        assert_eq!(resolve(names.iter().copied(), "3"), None);
        assert_eq!(resolve(names.iter().copied(), "c"), None);
    }

    #[test]
    fn dirty_cells_are_nan() {
        assert_eq!(parse_cell(" 12.5 "), 12.5);
        assert!(parse_cell("n/a").is_nan());
        assert!(parse_cell("").is_nan());
    }
}
