//! Matrix and vector input for the command line.
//!
//! Matrices come as JSON documents `{"rows": r, "cols": c, "data": [[...], ...]}`
//! or as headerless CSV, one matrix row per line. Vectors come as a JSON
//! array, a JSON object with a `data` array, or comma-separated numbers,
//! either inline or in a file. Diagnostics name rows and columns starting
//! from 1.

use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Vector};

fn parse_error(source_name: &str, message: impl Into<String>) -> Error {
    Error::Parse { source_name: source_name.to_string(), message: message.into() }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| parse_error(&path.display().to_string(), e.to_string()))
}

/// Reads a matrix file; `.csv` files are CSV, anything else is sniffed.
pub fn read_matrix(path: &Path) -> Result<DenseMatrix> {
    let text = read(path)?;
    let name = path.display().to_string();
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv || !text.trim_start().starts_with('{') {
        parse_matrix_csv(&text, &name)
    } else {
        parse_matrix_json(&text, &name)
    }
}

/// Parses the JSON matrix schema, checking declared against actual shape.
pub fn parse_matrix_json(text: &str, source_name: &str) -> Result<DenseMatrix> {
    let err = |m: String| parse_error(source_name, m);
    let doc: Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let obj = doc.as_object().ok_or_else(|| err("expected an object with rows, cols and data".into()))?;
    let dim = |key: &str| -> Result<usize> {
        let v = obj.get(key).ok_or_else(|| err(format!("missing field \"{key}\"")))?;
        v.as_u64()
            .filter(|&n| n > 0)
            .map(|n| n as usize)
            .ok_or_else(|| err(format!("\"{key}\" must be a positive integer, got {v}")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let data = obj.get("data").and_then(Value::as_array).ok_or_else(|| err("missing array field \"data\"".into()))?;
    if data.len() != rows {
        return Err(err(format!("declared {rows} rows, found {}", data.len())));
    }
    let mut values = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| err(format!("row {} is not an array", i + 1)))?;
        if row.len() != cols {
            return Err(err(format!("row {} has {} entries, declared {cols} columns", i + 1, row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            values.push(json_number(v).map_err(|m| err(format!("row {}, column {}: {m}", i + 1, j + 1)))?);
        }
    }
    DenseMatrix::new(rows, cols, values)
}

fn json_number(v: &Value) -> std::result::Result<f64, String> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(format!("expected a finite number, got {v}")),
    }
}

fn csv_number(field: &str) -> std::result::Result<f64, String> {
    match field.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(format!("non-finite value \"{}\"", field.trim())),
        Err(_) => Err(format!("cannot parse \"{}\" as a number", field.trim())),
    }
}

/// Parses headerless CSV; blank lines are skipped and all rows must have
/// the same length.
pub fn parse_matrix_csv(text: &str, source_name: &str) -> Result<DenseMatrix> {
    let err = |m: String| parse_error(source_name, m);
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| err(e.to_string()))?;
        let line = record.position().map_or(rows.len() + 1, |p| p.line() as usize);
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(j, f)| csv_number(f).map_err(|m| err(format!("row {line}, column {}: {m}", j + 1))))
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(err(format!("row {line} has {} columns, the first row has {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(err("no rows".into()));
    }
    DenseMatrix::from_rows(&rows)
}

/// A vector given inline (`"1,0"`, `"[1, 0]"`) or as a path to a file in
/// one of the vector formats.
pub fn read_vector(arg: &str) -> Result<Vector> {
    let path = Path::new(arg);
    if path.is_file() {
        parse_vector(&read(path)?, arg)
    } else {
        parse_vector(arg, "inline vector")
    }
}

/// Parses a JSON array, a JSON object with a `data` array, or
/// comma/whitespace separated numbers.
pub fn parse_vector(text: &str, source_name: &str) -> Result<Vector> {
    let err = |m: String| parse_error(source_name, m);
    let trimmed = text.trim();
    let values: Vec<f64> = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let doc: Value = serde_json::from_str(trimmed).map_err(|e| err(format!("invalid JSON: {e}")))?;
        let arr = match &doc {
            Value::Array(a) => a,
            Value::Object(o) => {
                o.get("data").and_then(Value::as_array).ok_or_else(|| err("missing array field \"data\"".into()))?
            }
            _ => unreachable!(),
        };
        arr.iter()
            .enumerate()
            .map(|(i, v)| json_number(v).map_err(|m| err(format!("entry {}: {m}", i + 1))))
            .collect::<Result<_>>()?
    } else {
        trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .enumerate()
            .map(|(i, f)| csv_number(f).map_err(|m| err(format!("entry {}: {m}", i + 1))))
            .collect::<Result<_>>()?
    };
    if values.is_empty() {
        return Err(err("empty vector".into()));
    }
    Vector::new(values)
}
