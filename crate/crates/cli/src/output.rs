use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub use alpha_limit::FORMAT_HEADER;

/// Value of the `format` field in JSON output.
pub const JSON_FORMAT: &str = "alpha-limit v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// `x` rounded to `digits` significant digits, trailing zeros dropped.
/// Infinities print as `inf` / `-inf`.
pub fn sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let e = x.abs().log10().floor() as i32;
    if (-5..16).contains(&e) {
        let decimals = (digits as i32 - 1 - e).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, exp) = s.split_once('e').expect("scientific format has an exponent");
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

/// A CSV cell: `inf` for infinity, `missing` for `None`.
pub fn cell(x: Option<f64>, digits: usize, missing: &str) -> String {
    x.map_or_else(|| missing.to_string(), |v| sig(v, digits))
}

/// Finite values rounded to `digits`; infinities and NaN become null.
pub fn json_num(x: f64, digits: usize) -> Value {
    if x.is_finite() {
        sig(x, digits)
            .parse::<f64>()
            .ok()
            .and_then(serde_json::Number::from_f64)
            .map_or(Value::Null, Value::Number)
    } else {
        Value::Null
    }
}

/// JSON object for named optional values. Infinite values are written as
/// null and listed under `"inf"`.
pub fn json_fields(fields: &[(&str, Option<f64>)], digits: usize) -> Map<String, Value> {
    let mut obj = Map::new();
    let mut inf = Vec::new();
    for &(name, v) in fields {
        if v.is_some_and(|x| x.is_infinite()) {
            inf.push(json!(name));
        }
        obj.insert(name.into(), v.map_or(Value::Null, |x| json_num(x, digits)));
    }
    obj.insert("inf".into(), Value::Array(inf));
    obj
}

pub fn json_document(mut body: Map<String, Value>) -> String {
    let mut doc = Map::new();
    doc.insert("format".into(), json!(JSON_FORMAT));
    doc.append(&mut body);
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json serializes");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
