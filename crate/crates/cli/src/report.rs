//! Report rendering. Every JSON report carries `schema: 1`; CSV output is a
//! table when the report has a `rows` array and a single flattened record
//! otherwise.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;
use crate::CliError;

pub const SCHEMA: u64 = 1;

/// A number when it fits in `u64`, a decimal string otherwise.
pub fn big(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => Value::from(x),
        None => Value::from(v.to_string()),
    }
}

/// Serializes `body` and prepends the schema tag.
pub fn with_schema(body: impl Serialize) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), Value::from(SCHEMA));
    match serde_json::to_value(body).expect("reports serialize") {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::String(s) => out.push((prefix.into(), s.clone())),
        Value::Null => out.push((prefix.into(), String::new())),
        Value::Array(_) => out.push((prefix.into(), v.to_string())),
        other => out.push((prefix.into(), other.to_string())),
    }
}

fn csv(report: &Value) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    match report.get("rows").and_then(Value::as_array) {
        Some(rows) => {
            let flat: Vec<Vec<(String, String)>> = rows
                .iter()
                .map(|r| {
                    let mut f = Vec::new();
                    flatten("", r, &mut f);
                    f
                })
                .collect();
            if let Some(first) = flat.first() {
                w.write_record(first.iter().map(|(k, _)| k)).map_err(io)?;
            }
            for f in &flat {
                w.write_record(f.iter().map(|(_, v)| v)).map_err(io)?;
            }
        }
        None => {
            let mut f = Vec::new();
            flatten("", report, &mut f);
            w.write_record(f.iter().map(|(k, _)| k)).map_err(io)?;
            w.write_record(f.iter().map(|(_, v)| v)).map_err(io)?;
        }
    }
    String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?).map_err(|e| CliError::Io(e.to_string()))
}

pub fn render(report: &Value, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report).expect("valid JSON") + "\n"),
        Format::Csv => csv(report),
    }
}
