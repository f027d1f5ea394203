//! CSV and JSON encodings of matrices, label functions and reports.
//!
//! Numbers are written in the shortest decimal form that parses back to the
//! same `f64`, so `parse(serialize(m)) == m` bit for bit.
//!
//! CSV layout: an optional header row of labels (with or without a leading
//! corner cell) and an optional leading label column. Missing labels become
//! `x1..xn`. JSON layout: `{"labels": [...], "matrix": [[...], ...]}` where
//! `labels` may be omitted.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::check::Status;
use crate::classify::ClassificationReport;
use crate::matrix::{default_labels, LabelFunction, LabeledMatrix, MatrixError};
use crate::transforms::{Decomposition, PreorderResult, ZeroCoordinates};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown matrix format `{other}`")),
        }
    }
}

impl Format {
    /// JSON when the first non-blank character opens an object, CSV otherwise.
    pub fn sniff(text: &str) -> Format {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Csv
        }
    }
}

/// Every way an input document can be rejected. Rows and columns are
/// 1-based positions in the document.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("input is empty")]
    Empty,
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid document: {0}")]
    Shape(String),
    #[error("matrix is not square: {rows} rows, row {row} has {cols} values")]
    NonSquare { rows: usize, row: usize, cols: usize },
    #[error("cell at row {row}, column {col} is not a number: `{text}`")]
    NonNumeric { row: usize, col: usize, text: String },
    #[error("cell at row {row}, column {col} is not finite: `{text}`")]
    NonFinite { row: usize, col: usize, text: String },
    #[error("{labels} labels for a matrix with {size} rows")]
    LabelCount { labels: usize, size: usize },
    #[error("header label `{header}` does not match row label `{row}`")]
    HeaderMismatch { header: String, row: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn is_number(cell: &str) -> bool {
    cell.parse::<f64>().is_ok()
}

fn parse_cell(text: &str, row: usize, col: usize) -> Result<f64, ParseError> {
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(ParseError::NonFinite {
            row,
            col,
            text: text.to_string(),
        }),
        Err(_) => Err(ParseError::NonNumeric {
            row,
            col,
            text: text.to_string(),
        }),
    }
}

fn read_csv_records(text: &str) -> Result<Vec<(usize, Vec<String>)>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| ParseError::Csv(e.to_string()))?;
        let line = rec.position().map_or(out.len() + 1, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, rec.iter().map(str::to_string).collect()));
    }
    Ok(out)
}

fn parse_csv(text: &str) -> Result<LabeledMatrix, ParseError> {
    let records = read_csv_records(text)?;
    let Some((_, first)) = records.first() else {
        return Err(ParseError::Empty);
    };

    let has_header = !is_number(&first[0]) && first[1..].iter().all(|c| !is_number(c));
    let (header, body) = if has_header {
        (Some(first.clone()), &records[1..])
    } else {
        (None, &records[..])
    };
    if body.is_empty() {
        return Err(ParseError::Shape("no data rows".into()));
    }
    let n = body.len();
    let label_col = !is_number(&body[0].1[0]);
    let offset = usize::from(label_col);

    let mut data = Vec::with_capacity(n * n);
    let mut row_labels = Vec::with_capacity(n);
    for (line, rec) in body {
        if rec.len() != n + offset {
            return Err(ParseError::NonSquare {
                rows: n,
                row: *line,
                cols: rec.len().saturating_sub(offset),
            });
        }
        if label_col {
            row_labels.push(rec[0].clone());
        }
        for (j, cell) in rec[offset..].iter().enumerate() {
            data.push(parse_cell(cell, *line, j + 1 + offset)?);
        }
    }

    let header_labels = match header {
        None => None,
        Some(h) if h.len() == n + 1 => Some(h[1..].to_vec()),
        Some(h) if h.len() == n => Some(h),
        Some(h) => {
            return Err(ParseError::LabelCount {
                labels: h.len(),
                size: n,
            })
        }
    };
    let labels = match (header_labels, label_col) {
        (Some(h), true) => {
            if let Some((a, b)) = h.iter().zip(&row_labels).find(|(a, b)| a != b) {
                return Err(ParseError::HeaderMismatch {
                    header: a.clone(),
                    row: b.clone(),
                });
            }
            h
        }
        (Some(h), false) => h,
        (None, true) => row_labels,
        (None, false) => default_labels(n),
    };
    Ok(LabeledMatrix::new(labels, data)?)
}

fn json_labels(v: &Value, what: &str) -> Result<Vec<String>, ParseError> {
    let arr = v
        .as_array()
        .ok_or_else(|| ParseError::Shape(format!("`{what}` must be an array of strings")))?;
    arr.iter()
        .map(|l| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| ParseError::Shape(format!("`{what}` must be an array of strings")))
        })
        .collect()
}

fn json_number(v: &Value, row: usize, col: usize) -> Result<f64, ParseError> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        Some(x) => Err(ParseError::NonFinite {
            row,
            col,
            text: x.to_string(),
        }),
        None => Err(ParseError::NonNumeric {
            row,
            col,
            text: v.to_string(),
        }),
    }
}

fn matrix_from_json(doc: &Value) -> Result<LabeledMatrix, ParseError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| ParseError::Shape("top level must be an object".into()))?;
    let rows = obj
        .get("matrix")
        .ok_or_else(|| ParseError::Shape("missing `matrix`".into()))?
        .as_array()
        .ok_or_else(|| ParseError::Shape("`matrix` must be an array of rows".into()))?;
    let n = rows.len();
    if n == 0 {
        return Err(ParseError::Empty);
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| ParseError::Shape(format!("row {} is not an array", i + 1)))?;
        if row.len() != n {
            return Err(ParseError::NonSquare {
                rows: n,
                row: i + 1,
                cols: row.len(),
            });
        }
        for (j, v) in row.iter().enumerate() {
            data.push(json_number(v, i + 1, j + 1)?);
        }
    }
    let labels = match obj.get("labels") {
        None | Some(Value::Null) => default_labels(n),
        Some(v) => json_labels(v, "labels")?,
    };
    if labels.len() != n {
        return Err(ParseError::LabelCount {
            labels: labels.len(),
            size: n,
        });
    }
    Ok(LabeledMatrix::new(labels, data)?)
}

fn parse_json_value(text: &str) -> Result<Value, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))
}

/// Parses a matrix document.
pub fn parse_matrix(text: &str, format: Format) -> Result<LabeledMatrix, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    match format {
        Format::Csv => parse_csv(text),
        Format::Json => matrix_from_json(&parse_json_value(text)?),
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn json_f64(v: f64) -> String {
    serde_json::to_string(&v).expect("finite floats always serialize")
}

fn csv_field(s: &str) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record([s]).expect("in-memory write");
    let mut out = String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 input");
    out.pop();
    out
}

fn matrix_json_body(m: &LabeledMatrix, indent: &str) -> String {
    let labels: Vec<String> = m.labels().iter().map(|l| json_string(l)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "{indent}  \"labels\": [{}],", labels.join(", "));
    let _ = writeln!(out, "{indent}  \"matrix\": [");
    let n = m.size();
    for (i, row) in m.as_slice().chunks(n).enumerate() {
        let cells: Vec<String> = row.iter().map(|&v| json_f64(v)).collect();
        let sep = if i + 1 < n { "," } else { "" };
        let _ = writeln!(out, "{indent}    [{}]{sep}", cells.join(", "));
    }
    let _ = writeln!(out, "{indent}  ]");
    let _ = write!(out, "{indent}}}");
    out
}

/// Canonical text of a matrix. Labels are always written.
pub fn serialize_matrix(m: &LabeledMatrix, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = matrix_json_body(m, "");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::new();
            for l in m.labels() {
                out.push(',');
                out.push_str(&csv_field(l));
            }
            out.push('\n');
            let n = m.size();
            for (i, row) in m.as_slice().chunks(n).enumerate() {
                out.push_str(&csv_field(m.label(i)));
                for v in row {
                    let _ = write!(out, ",{v}");
                }
                out.push('\n');
            }
            out
        }
    }
}

fn function_json_body(f: &LabelFunction) -> String {
    let labels: Vec<String> = f.labels().iter().map(|l| json_string(l)).collect();
    let values: Vec<String> = f.values().iter().map(|&v| json_f64(v)).collect();
    format!(
        "{{\"labels\": [{}], \"values\": [{}]}}",
        labels.join(", "),
        values.join(", ")
    )
}

/// A label function as two-column CSV (`label,value`) or as
/// `{"labels": [...], "values": [...]}`.
pub fn serialize_label_function(f: &LabelFunction, format: Format) -> String {
    match format {
        Format::Json => function_json_body(f) + "\n",
        Format::Csv => {
            let mut out = String::new();
            for (l, v) in f.iter() {
                let _ = writeln!(out, "{},{v}", csv_field(l));
            }
            out
        }
    }
}

fn function_from_json(v: &Value) -> Result<LabelFunction, ParseError> {
    let obj = v
        .as_object()
        .ok_or_else(|| ParseError::Shape("label function must be an object".into()))?;
    let labels = json_labels(
        obj.get("labels")
            .ok_or_else(|| ParseError::Shape("missing `labels`".into()))?,
        "labels",
    )?;
    let values = obj
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::Shape("missing `values` array".into()))?;
    let values = values
        .iter()
        .enumerate()
        .map(|(i, v)| json_number(v, i + 1, 2))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LabelFunction::new(labels, values)?)
}

/// Parses a label function. CSV input is two columns, `label,value`, with an
/// optional header row.
pub fn parse_label_function(text: &str, format: Format) -> Result<LabelFunction, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    match format {
        Format::Json => function_from_json(&parse_json_value(text)?),
        Format::Csv => {
            let records = read_csv_records(text)?;
            let mut labels = Vec::new();
            let mut values = Vec::new();
            for (k, (line, rec)) in records.iter().enumerate() {
                if rec.len() != 2 {
                    return Err(ParseError::Shape(format!(
                        "line {line}: expected `label,value`, got {} fields",
                        rec.len()
                    )));
                }
                if k == 0 && !is_number(&rec[1]) {
                    continue;
                }
                labels.push(rec[0].clone());
                values.push(parse_cell(&rec[1], *line, 2)?);
            }
            if labels.is_empty() {
                return Err(ParseError::Empty);
            }
            Ok(LabelFunction::new(labels, values)?)
        }
    }
}

/// `{"d": <matrix>, "f": <label function>}`.
pub fn serialize_decomposition(dec: &Decomposition) -> String {
    format!(
        "{{\n  \"d\": {},\n  \"f\": {}\n}}\n",
        matrix_json_body(&dec.d, "  "),
        function_json_body(&dec.f)
    )
}

pub fn parse_decomposition(text: &str) -> Result<Decomposition, ParseError> {
    let v = parse_json_value(text)?;
    let d = v.get("d").ok_or_else(|| ParseError::Shape("missing `d`".into()))?;
    let f = v.get("f").ok_or_else(|| ParseError::Shape("missing `f`".into()))?;
    Ok(Decomposition {
        d: matrix_from_json(d)?,
        f: function_from_json(f)?,
    })
}

/// True when a JSON document looks like a decomposition (`d` and `f` keys).
pub fn is_decomposition(text: &str) -> bool {
    serde_json::from_str::<Value>(text)
        .map(|v| v.get("d").is_some() && v.get("f").is_some())
        .unwrap_or(false)
}

pub fn serialize_zero_coordinates(z: &ZeroCoordinates) -> String {
    format!(
        "{{\n  \"reference\": {},\n  \"a\": {},\n  \"b\": {}\n}}\n",
        json_string(&z.reference),
        function_json_body(&z.a),
        function_json_body(&z.b)
    )
}

pub fn serialize_preorder(p: &PreorderResult) -> String {
    to_pretty_json(p)
}

fn to_pretty_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types always serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(format!("unknown report format `{other}`")),
        }
    }
}

fn fmt_slack(v: f64) -> String {
    if v.is_finite() {
        v.to_string()
    } else {
        "-".to_string()
    }
}

/// JSON (stable key order, witnesses as labels) or a plain-text table.
pub fn serialize_report(r: &ClassificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_pretty_json(r),
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "labels: {}", r.labels.join(", "));
            let _ = writeln!(out);
            let _ = writeln!(out, "{:<28} value", "property");
            for (name, v) in r.flags() {
                let _ = writeln!(out, "{name:<28} {v}");
            }
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:<12} {:<6} {:>24} {:>10} {:>10}  first witness",
                "check", "status", "min_slack", "checked", "violations"
            );
            for (name, v) in r.verdicts.named() {
                let witness = match (v.status, v.witnesses.first()) {
                    (Status::Fail, Some(w)) => format!(
                        "({}, {}, {}) lhs={} rhs={} deficit={}",
                        w.x, w.y, w.z, w.lhs, w.rhs, w.deficit
                    ),
                    _ => String::new(),
                };
                let _ = writeln!(
                    out,
                    "{:<12} {:<6} {:>24} {:>10} {:>10}  {}",
                    name,
                    v.status.to_string(),
                    fmt_slack(v.min_slack),
                    v.count_checked,
                    v.violation_count,
                    witness
                );
            }
            out
        }
    }
}
