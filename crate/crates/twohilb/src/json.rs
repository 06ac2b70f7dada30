//! JSON documents for 1-cells, 2-cells and check reports.
//!
//! ```text
//! {"kind":"one-cell","from":n,"to":m,"dims":[[..],..]}
//! {"kind":"two-cell","source":{..},"target":{..},"entries":[[[[re,im],..],..],..]}
//! {"kind":"report","name":..,"passed":..,"max_entry_error":..,"fitted_scalar":[re,im]|null}
//! ```
//!
//! Each 2-cell entry is a flat row-major list of `[re, im]` pairs whose shape
//! follows from the boundary dimensions. Floats are written with 17
//! significant digits, so values survive a round trip exactly. An infinite
//! `max_entry_error` is written as `null`.

use std::io;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::linalg::ComplexMatrix;
use crate::report::CheckReport;
use crate::{OneCell, TwoCell};

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    OneCell(OneCell),
    TwoCell(TwoCell),
    Report(CheckReport),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::OneCell(_) => "one-cell",
            Document::TwoCell(_) => "two-cell",
            Document::Report(_) => "report",
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: String },
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OneCellRepr {
    from: usize,
    to: usize,
    dims: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoCellRepr {
    source: OneCellRepr,
    target: OneCellRepr,
    entries: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportRepr {
    name: String,
    passed: bool,
    max_entry_error: Option<f64>,
    fitted_scalar: Option<[f64; 2]>,
}

#[derive(Serialize)]
struct Tagged<'a, T> {
    kind: &'a str,
    #[serde(flatten)]
    body: T,
}

fn one_repr(f: &OneCell) -> OneCellRepr {
    OneCellRepr {
        from: f.source(),
        to: f.target(),
        dims: f.dim_rows(),
    }
}

fn two_repr(a: &TwoCell) -> TwoCellRepr {
    let entries = (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| a.entry(i, j).data().iter().map(|z| [z.re, z.im]).collect())
                .collect()
        })
        .collect();
    TwoCellRepr {
        source: one_repr(a.source()),
        target: one_repr(a.target()),
        entries,
    }
}

/// Writes every float in scientific notation with 17 significant digits.
struct SignificantDigits;

impl serde_json::ser::Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

fn write<T: Serialize>(kind: &str, body: T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
    Tagged { kind, body }
        .serialize(&mut ser)
        .expect("in-memory serialization");
    String::from_utf8(out).expect("JSON is UTF-8")
}

/// One line of compact JSON.
pub fn to_json(doc: &Document) -> String {
    match doc {
        Document::OneCell(f) => write(doc.kind(), one_repr(f)),
        Document::TwoCell(a) => write(doc.kind(), two_repr(a)),
        Document::Report(r) => write(
            doc.kind(),
            ReportRepr {
                name: r.name.clone(),
                passed: r.passed,
                max_entry_error: Some(r.max_entry_error),
                fitted_scalar: r.fitted_scalar.map(|z| [z.re, z.im]),
            },
        ),
    }
}

pub fn one_cell_to_json(f: &OneCell) -> String {
    write("one-cell", one_repr(f))
}

pub fn two_cell_to_json(a: &TwoCell) -> String {
    write("two-cell", two_repr(a))
}

pub fn report_to_json(r: &CheckReport) -> String {
    to_json(&Document::Report(r.clone()))
}

fn typed<T: DeserializeOwned>(value: Json) -> Result<T, JsonError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        schema(path, e.into_inner().to_string())
    })
}

fn one_from_repr(r: OneCellRepr, path: &str) -> Result<OneCell, JsonError> {
    if r.dims.len() != r.to {
        return Err(schema(
            format!("{path}dims"),
            format!("{} rows, expected {}", r.dims.len(), r.to),
        ));
    }
    for (i, row) in r.dims.iter().enumerate() {
        if row.len() != r.from {
            return Err(schema(
                format!("{path}dims[{i}]"),
                format!("{} columns, expected {}", row.len(), r.from),
            ));
        }
    }
    OneCell::new(r.from, r.to, r.dims.concat()).map_err(|e| schema(format!("{path}dims"), e.to_string()))
}

fn two_from_repr(r: TwoCellRepr) -> Result<TwoCell, JsonError> {
    let source = one_from_repr(r.source, "source.")?;
    let target = one_from_repr(r.target, "target.")?;
    if (source.source(), source.target()) != (target.source(), target.target()) {
        return Err(schema(
            ".",
            format!("boundaries are not parallel: {source} vs {target}"),
        ));
    }
    if r.entries.len() != source.target() {
        return Err(schema(
            "entries",
            format!("{} rows, expected {}", r.entries.len(), source.target()),
        ));
    }
    let mut entries = Vec::with_capacity(source.dims().len());
    for (i, row) in r.entries.into_iter().enumerate() {
        if row.len() != source.source() {
            return Err(schema(
                format!("entries[{i}]"),
                format!("{} columns, expected {}", row.len(), source.source()),
            ));
        }
        for (j, flat) in row.into_iter().enumerate() {
            let (rows, cols) = (target.dim(i, j), source.dim(i, j));
            if rows.checked_mul(cols) != Some(flat.len()) {
                return Err(schema(
                    format!("entries[{i}][{j}]"),
                    format!("{} numbers, expected {rows}x{cols}", flat.len()),
                ));
            }
            let data = flat.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
            entries.push(ComplexMatrix::new(rows, cols, data).expect("length checked"));
        }
    }
    TwoCell::new(source, target, entries).map_err(|e| schema("entries", e.to_string()))
}

/// Parse any document kind.
pub fn from_json(text: &str) -> Result<Document, JsonError> {
    let mut value: Json = serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))?;
    let Json::Object(map) = &mut value else {
        return Err(schema(".", "expected an object"));
    };
    let kind = match map.remove("kind") {
        Some(Json::String(s)) => s,
        Some(_) => return Err(schema("kind", "expected a string")),
        None => return Err(schema("kind", "missing field")),
    };
    match kind.as_str() {
        "one-cell" => Ok(Document::OneCell(one_from_repr(typed(value)?, "")?)),
        "two-cell" => Ok(Document::TwoCell(two_from_repr(typed(value)?)?)),
        "report" => {
            let r: ReportRepr = typed(value)?;
            Ok(Document::Report(CheckReport {
                name: r.name,
                passed: r.passed,
                max_entry_error: r.max_entry_error.unwrap_or(f64::INFINITY),
                fitted_scalar: r.fitted_scalar.map(|[re, im]| Complex64::new(re, im)),
            }))
        }
        other => Err(schema("kind", format!("unknown kind {other:?}"))),
    }
}

pub fn two_cell_from_json(text: &str) -> Result<TwoCell, JsonError> {
    match from_json(text)? {
        Document::TwoCell(a) => Ok(a),
        other => Err(JsonError::WrongKind {
            expected: "two-cell",
            found: other.kind().to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{bell_measurement, copy};
    use crate::linalg::c;

    #[test]
    fn copy_has_empty_off_diagonal_entries() {
        let text = two_cell_to_json(&copy(2).unwrap());
        let v: Json = serde_json::from_str(&text).unwrap();
        assert_eq!(v["kind"], "two-cell");
        assert_eq!(v["source"]["dims"], serde_json::json!([[1, 0], [0, 1]]));
        assert_eq!(v["target"]["dims"], serde_json::json!([[1, 1], [1, 1]]));
        assert_eq!(v["entries"][0][1], serde_json::json!([]));
        assert_eq!(v["entries"][1][0], serde_json::json!([]));
        assert_eq!(v["entries"][0][0][0][0].as_f64(), Some(1.0));
        assert!(text.starts_with(r#"{"kind":"two-cell","source":{"from":2,"to":2,"dims":[[1,0],[0,1]]}"#));
        assert!(text.contains("1.0000000000000000e0"));
    }

    #[test]
    fn bell_measurement_round_trips() {
        let m = bell_measurement();
        assert_eq!(two_cell_from_json(&two_cell_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn report_document() {
        let r = CheckReport {
            name: "teleportation".into(),
            passed: true,
            max_entry_error: 0.0,
            fitted_scalar: Some(c(0.5, 0.0)),
        };
        let text = report_to_json(&r);
        assert_eq!(
            text,
            r#"{"kind":"report","name":"teleportation","passed":true,"max_entry_error":0.0000000000000000e0,"fitted_scalar":[5.0000000000000000e-1,0.0000000000000000e0]}"#
        );
        assert_eq!(from_json(&text).unwrap(), Document::Report(r));
        let inf = CheckReport {
            name: "x".into(),
            passed: false,
            max_entry_error: f64::INFINITY,
            fitted_scalar: None,
        };
        let text = report_to_json(&inf);
        assert!(text.contains(r#""max_entry_error":null,"fitted_scalar":null"#));
        assert_eq!(from_json(&text).unwrap(), Document::Report(inf));
    }

    #[test]
    fn errors_carry_paths() {
        let bad_entry = r#"{"kind":"two-cell","source":{"from":1,"to":1,"dims":[[1]]},"target":{"from":1,"to":1,"dims":[[1]]},"entries":[[[[1.0, "x"]]]]}"#;
        match from_json(bad_entry).unwrap_err() {
            JsonError::Schema { path, .. } => assert_eq!(path, "entries[0][0][0][1]"),
            e => panic!("{e:?}"),
        }
        let short = r#"{"kind":"two-cell","source":{"from":1,"to":1,"dims":[[2]]},"target":{"from":1,"to":1,"dims":[[1]]},"entries":[[[[1.0, 0.0]]]]}"#;
        match from_json(short).unwrap_err() {
            JsonError::Schema { path, .. } => assert_eq!(path, "entries[0][0]"),
            e => panic!("{e:?}"),
        }
        let ragged = r#"{"kind":"one-cell","from":2,"to":1,"dims":[[1]]}"#;
        match from_json(ragged).unwrap_err() {
            JsonError::Schema { path, .. } => assert_eq!(path, "dims[0]"),
            e => panic!("{e:?}"),
        }
        let extra = r#"{"kind":"one-cell","from":1,"to":1,"dims":[[1]],"x":1}"#;
        assert!(matches!(from_json(extra), Err(JsonError::Schema { .. })));
        assert!(matches!(from_json("[1"), Err(JsonError::Syntax(_))));
        assert!(matches!(
            from_json(r#"{"kind":"three-cell"}"#),
            Err(JsonError::Schema { .. })
        ));
        let one = one_cell_to_json(&OneCell::identity(2));
        assert!(matches!(two_cell_from_json(&one), Err(JsonError::WrongKind { .. })));
    }
}
