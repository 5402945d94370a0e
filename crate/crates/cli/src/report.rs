//! JSON-lines and CSV emission. Every record carries the toolkit version and
//! a hash of the run configuration; floats keep 12 significant digits.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Number, Value};
use sha2::{Digest, Sha256};

pub const TOOLKIT_VERSION: &str = concat!("spexlab ", env!("CARGO_PKG_VERSION"));
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("refusing to emit an empty report")]
    Empty,
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Provenance fields prepended to every record.
#[derive(Clone, Debug)]
pub struct Stamp {
    pub version: String,
    pub config_hash: String,
}

impl Stamp {
    pub fn for_config<C: Serialize>(config: &C) -> Result<Stamp, ReportError> {
        Ok(Stamp {
            version: TOOLKIT_VERSION.to_string(),
            config_hash: config_hash(config)?,
        })
    }
}

/// First 16 hex digits of the SHA-256 of the config's JSON form.
pub fn config_hash<C: Serialize>(config: &C) -> Result<String, ReportError> {
    let bytes = serde_json::to_vec(config)?;
    let digest = Sha256::digest(&bytes);
    Ok(hex::encode(digest)[..16].to_string())
}

pub fn round_significant(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().unwrap_or(f64::NAN), SIGNIFICANT_DIGITS);
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

fn stamped<R: Serialize>(record: &R, stamp: &Stamp) -> Result<Map<String, Value>, ReportError> {
    let mut out = Map::new();
    out.insert("toolkit".into(), Value::String(stamp.version.clone()));
    out.insert("config_hash".into(), Value::String(stamp.config_hash.clone()));
    match round_floats(serde_json::to_value(record)?) {
        Value::Object(map) => out.extend(map),
        other => {
            out.insert("value".into(), other);
        }
    }
    Ok(out)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let cells: Vec<String> = items.iter().map(scalar_cell).collect();
            out.push((prefix.to_string(), cells.join(";")));
        }
        Value::Array(_) => out.push((prefix.to_string(), v.to_string())),
        other => out.push((prefix.to_string(), scalar_cell(other))),
    }
}

fn scalar_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Renders `records` in input order.
///
/// # Errors
/// [`ReportError::Empty`] when there is nothing to render.
pub fn render<R: Serialize>(records: &[R], format: Format, stamp: &Stamp) -> Result<String, ReportError> {
    if records.is_empty() {
        return Err(ReportError::Empty);
    }
    let rows = records
        .iter()
        .map(|r| stamped(r, stamp))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => {
            let mut s = String::new();
            for row in rows {
                s.push_str(&serde_json::to_string(&row)?);
                s.push('\n');
            }
            Ok(s)
        }
        Format::Csv => {
            let flat: Vec<Vec<(String, String)>> = rows
                .iter()
                .map(|row| {
                    let mut cells = Vec::new();
                    flatten("", &Value::Object(row.clone()), &mut cells);
                    cells
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for row in &flat {
                for (k, _) in row {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for row in &flat {
                w.write_record(header.iter().map(|h| {
                    row.iter()
                        .find(|(k, _)| k == h)
                        .map_or("", |(_, v)| v.as_str())
                }))?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

/// Renders and writes to `path`, or stdout when `path` is `None`. Nothing is
/// created on error.
pub fn emit<R: Serialize>(
    records: &[R],
    format: Format,
    stamp: &Stamp,
    path: Option<&Path>,
) -> Result<(), ReportError> {
    let text = render(records, format, stamp)?;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
