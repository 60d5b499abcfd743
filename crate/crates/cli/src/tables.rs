use alpha_limit::alpha::{tau0, tau1_interval, tau2};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::output::{cell, json_document, json_fields, sig, text_table, Format, FORMAT_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Tau0,
    Tau2,
    Tau1,
    All,
}

pub const TAU0_ROWS: [f64; 10] = [0.0, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.3, 0.5, 0.9, 0.9999];
pub const TAU2_ROWS: [f64; 9] = [0.0, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.4, 0.49, 0.499];
pub const TAU1_ROWS: [f64; 8] = [0.0, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.22, 0.2265409];

pub const DEFAULT_ALPHAS: [f64; 14] = [
    0.0, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9,
];

const UNDEFINED: &str = "undefined";

impl Which {
    fn columns(self) -> &'static [&'static str] {
        match self {
            Which::Tau0 => &["tau0"],
            Which::Tau2 => &["tau2"],
            Which::Tau1 => &["tau1", "tau1_prime"],
            Which::All => &["tau0", "tau1", "tau1_prime", "tau2"],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Which::Tau0 => "tau0",
            Which::Tau2 => "tau2",
            Which::Tau1 => "tau1",
            Which::All => "all",
        }
    }

    pub fn reference_alphas(self) -> Vec<f64> {
        let mut v: Vec<f64> = match self {
            Which::Tau0 => TAU0_ROWS.to_vec(),
            Which::Tau2 => TAU2_ROWS.to_vec(),
            Which::Tau1 => TAU1_ROWS.to_vec(),
            Which::All => TAU0_ROWS
                .iter()
                .chain(&TAU2_ROWS)
                .chain(&TAU1_ROWS)
                .copied()
                .collect(),
        };
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }
}

struct Row {
    alpha: f64,
    /// In column order; `None` where alpha is outside the curve's domain.
    values: Vec<Option<f64>>,
}

fn row(which: Which, alpha: f64) -> Row {
    let interval = tau1_interval(alpha).ok();
    let values = which
        .columns()
        .iter()
        .map(|&c| match c {
            "tau0" => tau0(alpha).ok(),
            "tau1" => interval.map(|i| i.0),
            "tau1_prime" => interval.map(|i| i.1),
            "tau2" => tau2(alpha).ok(),
            _ => unreachable!(),
        })
        .collect();
    Row { alpha, values }
}

pub fn render(which: Which, alphas: &[f64], format: Format, digits: usize) -> String {
    let rows: Vec<Row> = alphas.iter().map(|&a| row(which, a)).collect();
    let cols = which.columns();
    match format {
        Format::Csv => {
            let mut out = format!("{FORMAT_HEADER}\nalpha,{}\n", cols.join(","));
            for r in &rows {
                let cells: Vec<String> =
                    r.values.iter().map(|v| cell(*v, digits, UNDEFINED)).collect();
                out.push_str(&format!("{},{}\n", sig(r.alpha, digits), cells.join(",")));
            }
            out
        }
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let fields: Vec<(&str, Option<f64>)> =
                        cols.iter().copied().zip(r.values.iter().copied()).collect();
                    let mut obj = Map::new();
                    obj.insert("alpha".into(), json!(r.alpha));
                    obj.append(&mut json_fields(&fields, digits));
                    let undefined: Vec<&str> = fields
                        .iter()
                        .filter(|(_, v)| v.is_none())
                        .map(|(n, _)| *n)
                        .collect();
                    obj.insert("undefined".into(), json!(undefined));
                    Value::Object(obj)
                })
                .collect();
            let mut body = Map::new();
            body.insert("table".into(), json!(which.name()));
            body.insert("rows".into(), Value::Array(list));
            json_document(body)
        }
        Format::Text => {
            let mut header = vec!["alpha"];
            header.extend_from_slice(cols);
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    std::iter::once(sig(r.alpha, digits))
                        .chain(r.values.iter().map(|v| cell(*v, digits, UNDEFINED)))
                        .collect()
                })
                .collect();
            format!("{FORMAT_HEADER}\n{}", text_table(&header, &cells))
        }
    }
}
