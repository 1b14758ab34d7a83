//! Machine-readable output: one [`OutputRecord`] per invocation, as JSON or CSV.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_NAME: &str = "fourier-laplace";

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed csv record: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexField {
    pub re: f64,
    pub im: f64,
}

/// One named value in a row. Non-finite reals are stored as text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Complex(ComplexField),
    Bool(bool),
    Int(i64),
    Real(f64),
    Text(String),
}

impl Field {
    pub fn real(x: f64) -> Self {
        if x.is_finite() {
            Field::Real(x)
        } else {
            Field::Text(format!("non-finite:{x}"))
        }
    }

    pub fn complex(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            Field::Complex(ComplexField { re: z.re, im: z.im })
        } else {
            Field::Text(format!("non-finite:{z}"))
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Field::Text(s.into())
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match self {
            Field::Complex(c) => Some(Complex64::new(c.re, c.im)),
            Field::Real(x) => Some(Complex64::new(*x, 0.0)),
            Field::Int(n) => Some(Complex64::new(*n as f64, 0.0)),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Field::Real(x) => Some(*x),
            Field::Int(n) => Some(*n as f64),
            _ => None,
        }
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::real(x)
    }
}

impl From<Complex64> for Field {
    fn from(z: Complex64) -> Self {
        Field::complex(z)
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

impl From<i64> for Field {
    fn from(n: i64) -> Self {
        Field::Int(n)
    }
}

impl From<usize> for Field {
    fn from(n: usize) -> Self {
        Field::Int(n as i64)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

pub type Row = BTreeMap<String, Field>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
}

impl Header {
    pub fn current() -> Self {
        Self {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub params: Row,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub header: Option<Header>,
}

/// Builds a row from `(name, value)` pairs.
pub fn row<const N: usize>(fields: [(&str, Field); N]) -> Row {
    fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

const META_SCHEMA: &str = "schema_version";
const META_COMMAND: &str = "command";
const META_TOOL: &str = "header.tool";
const META_VERSION: &str = "header.version";
const PARAM_PREFIX: &str = "param.";
const ROW_PREFIX: &str = "row.";

fn format_real(x: f64) -> String {
    // Debug keeps the decimal point and round-trips exactly
    format!("{x:?}")
}

fn flatten(prefix: &str, r: &Row, out: &mut BTreeMap<String, String>) {
    for (k, v) in r {
        let name = format!("{prefix}{k}");
        match v {
            Field::Complex(c) => {
                out.insert(format!("{name}.re"), format_real(c.re));
                out.insert(format!("{name}.im"), format_real(c.im));
            }
            Field::Bool(b) => {
                out.insert(name, b.to_string());
            }
            Field::Int(n) => {
                out.insert(name, n.to_string());
            }
            Field::Real(x) => {
                out.insert(name, format_real(*x));
            }
            Field::Text(s) => {
                out.insert(name, s.clone());
            }
        }
    }
}

fn parse_scalar(s: &str) -> Field {
    match s {
        "true" => return Field::Bool(true),
        "false" => return Field::Bool(false),
        _ => {}
    }
    if let Ok(n) = s.parse::<i64>() {
        return Field::Int(n);
    }
    if s.contains(['.', 'e', 'E']) && s.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
        if let Ok(x) = s.parse::<f64>() {
            return Field::Real(x);
        }
    }
    Field::Text(s.to_string())
}

fn unflatten(cells: &BTreeMap<&str, &str>) -> Result<Row, RecordError> {
    let mut out = Row::new();
    for (&k, &v) in cells {
        if v.is_empty() {
            continue;
        }
        if let Some(base) = k.strip_suffix(".re") {
            let im_key = format!("{base}.im");
            if let Some(im) = cells.get(im_key.as_str()) {
                let re: f64 = v.parse().map_err(|_| RecordError::Malformed(format!("{k} = {v}")))?;
                let im: f64 = im.parse().map_err(|_| RecordError::Malformed(format!("{im_key} = {im}")))?;
                out.insert(base.to_string(), Field::Complex(ComplexField { re, im }));
                continue;
            }
        }
        if let Some(base) = k.strip_suffix(".im") {
            if cells.contains_key(format!("{base}.re").as_str()) {
                continue;
            }
        }
        out.insert(k.to_string(), parse_scalar(v));
    }
    Ok(out)
}

impl OutputRecord {
    pub fn new(command: &str, params: Row, with_header: bool) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            params,
            rows: Vec::new(),
            header: with_header.then(Header::current),
        }
    }

    pub fn to_json(&self) -> Result<String, RecordError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self, RecordError> {
        Ok(serde_json::from_str(s)?)
    }

    /// One CSV line per row. Metadata and params repeat on every line so that
    /// each line stands alone; a record without rows still emits one line.
    pub fn to_csv(&self) -> Result<String, RecordError> {
        let mut meta = BTreeMap::new();
        meta.insert(META_SCHEMA.to_string(), self.schema_version.clone());
        meta.insert(META_COMMAND.to_string(), self.command.clone());
        if let Some(h) = &self.header {
            meta.insert(META_TOOL.to_string(), h.tool.clone());
            meta.insert(META_VERSION.to_string(), h.version.clone());
        }
        flatten(PARAM_PREFIX, &self.params, &mut meta);
        let mut lines: Vec<BTreeMap<String, String>> = if self.rows.is_empty() {
            vec![meta.clone()]
        } else {
            self.rows
                .iter()
                .map(|r| {
                    let mut line = meta.clone();
                    flatten(ROW_PREFIX, r, &mut line);
                    line
                })
                .collect()
        };
        let mut columns: BTreeSet<String> = BTreeSet::new();
        for l in &lines {
            columns.extend(l.keys().cloned());
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&columns)?;
        for l in lines.iter_mut() {
            w.write_record(columns.iter().map(|c| l.get(c).map(String::as_str).unwrap_or("")))?;
        }
        let bytes = w.into_inner().map_err(|e| RecordError::Malformed(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| RecordError::Malformed(e.to_string()))
    }

    pub fn from_csv(s: &str) -> Result<Self, RecordError> {
        let mut rd = csv::Reader::from_reader(s.as_bytes());
        let columns: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
        let mut record: Option<OutputRecord> = None;
        let has_rows = columns.iter().any(|c| c.starts_with(ROW_PREFIX));
        for line in rd.records() {
            let line = line?;
            let cells: BTreeMap<&str, &str> = columns.iter().map(String::as_str).zip(line.iter()).collect();
            let pick = |prefix: &str| -> BTreeMap<&str, &str> {
                cells
                    .iter()
                    .filter_map(|(k, v)| k.strip_prefix(prefix).map(|s| (s, *v)))
                    .collect()
            };
            if record.is_none() {
                let get = |k: &str| {
                    cells
                        .get(k)
                        .map(|s| s.to_string())
                        .ok_or_else(|| RecordError::Malformed(format!("missing column {k}")))
                };
                let header = match (cells.get(META_TOOL), cells.get(META_VERSION)) {
                    (Some(t), Some(v)) => Some(Header { tool: t.to_string(), version: v.to_string() }),
                    _ => None,
                };
                record = Some(OutputRecord {
                    schema_version: get(META_SCHEMA)?,
                    command: get(META_COMMAND)?,
                    params: unflatten(&pick(PARAM_PREFIX))?,
                    rows: Vec::new(),
                    header,
                });
            }
            if has_rows {
                if let Some(r) = record.as_mut() {
                    r.rows.push(unflatten(&pick(ROW_PREFIX))?);
                }
            }
        }
        record.ok_or_else(|| RecordError::Malformed("no data line".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(header: bool) -> OutputRecord {
        let mut r = OutputRecord::new(
            "eval",
            row([("alpha", 2.0.into()), ("beta", Complex64::new(-0.5, 1.0).into())]),
            header,
        );
        r.rows.push(row([
            ("value", Complex64::new(0.1, -3e-17).into()),
            ("n", 3usize.into()),
            ("ok", true.into()),
            ("tag", "rotate_half".into()),
        ]));
        r.rows.push(row([("value", Complex64::new(1.0, 2.0).into()), ("slope", (-2.5).into())]));
        r
    }

    #[test]
    fn json_round_trip() {
        for h in [true, false] {
            let r = sample(h);
            assert_eq!(OutputRecord::from_json(&r.to_json().unwrap()).unwrap(), r);
        }
    }

    #[test]
    fn csv_round_trip() {
        for h in [true, false] {
            let r = sample(h);
            let s = r.to_csv().unwrap();
            assert_eq!(OutputRecord::from_csv(&s).unwrap(), r, "{s}");
        }
    }

    #[test]
    fn integral_reals_stay_real() {
        assert_eq!(parse_scalar(&format_real(2.0)), Field::Real(2.0));
        assert_eq!(parse_scalar("2"), Field::Int(2));
        assert_eq!(parse_scalar("sector2"), Field::Text("sector2".into()));
        assert!(matches!(Field::real(f64::NAN), Field::Text(_)));
    }
}
