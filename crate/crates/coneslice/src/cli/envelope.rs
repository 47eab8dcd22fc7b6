//! Result envelope and JSON writing.
//!
//! Envelopes are schema-stable across subcommands and floats are written
//! with 17 significant digits so that re-parsing reproduces every f64
//! bit-exactly. Output is deterministic for a fixed command line and seed;
//! only `diagnostics.timings` varies between runs.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

use crate::error::Error;

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub diagnostics: Value,
}

#[derive(Debug, Serialize)]
pub struct ErrorEnvelope {
    pub version: &'static str,
    pub error: Value,
}

impl ErrorEnvelope {
    pub fn from_error(err: &Error) -> Self {
        Self {
            version: crate::VERSION,
            error: json!({
                "kind": err.kind(),
                "message": err.to_string(),
            }),
        }
    }
}

pub fn diagnostics(iterations: u64, residuals: Value, total_ms: f64) -> Value {
    json!({
        "iterations": iterations,
        "residuals": residuals,
        "timings": { "total_ms": total_ms },
    })
}

/// f64 -> JSON number; non-finite values become null.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

pub fn vec_f64(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

pub fn obj(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Writes every f64 in scientific notation with 17 significant digits.
struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).expect("envelope serialization");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}
