//! CSV and JSON artifacts. Floats are written with 17 significant digits, so
//! every value reads back bit-exactly.

use std::fs::File;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::Front;

/// `v` in scientific notation with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_error(path: &Path, err: csv::Error) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        message: err.to_string(),
    }
}

/// Writes `rows` under `header`, creating parent directories.
pub fn write_rows<S: AsRef<str>>(path: &Path, header: &[S], rows: &[Vec<f64>]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(header.iter().map(|h| h.as_ref()))
        .map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.write_record(row.iter().map(|v| format_f64(*v)))
            .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// `f1..fM` column names.
pub fn objective_header(objectives: usize) -> Vec<String> {
    (1..=objectives).map(|i| format!("f{i}")).collect()
}

/// Reads a front written by this crate, or any headed CSV of numbers.
///
/// A leading `slot` column, as in parallel-coordinates exports, is dropped.
pub fn read_front(path: &Path) -> Result<Front> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let skip = usize::from(
        r.headers()
            .map_err(|e| csv_error(path, e))?
            .get(0)
            .is_some_and(|h| h == "slot"),
    );
    let mut points = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let row = record
            .iter()
            .skip(skip)
            .map(|field| {
                field.parse::<f64>().map_err(|_| Error::Parse {
                    path: path.to_path_buf(),
                    message: format!("row {}: `{field}` is not a number", line + 1),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        points.push(row);
    }
    Front::new(points).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
