use alpha_limit::alpha::{alpha_profile, AlphaProfile};
use anyhow::{bail, Result};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::output::{cell, json_document, json_fields, sig, Format, FORMAT_HEADER};

/// `count` evenly spaced values from `start` to `stop` inclusive.
pub fn grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        bail!("grid needs at least one point");
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

pub fn profiles(alphas: &[f64]) -> Result<Vec<AlphaProfile>> {
    if alphas.is_empty() {
        bail!("empty alpha grid");
    }
    if let Some(a) = alphas.iter().find(|a| !(0.0..1.0).contains(*a)) {
        bail!("alpha = {a} is outside [0, 1)");
    }
    // collect() keeps input order whatever order the workers finish in
    Ok(alphas
        .par_iter()
        .map(|&a| alpha_profile(a))
        .collect::<alpha_limit::Result<Vec<_>>>()?)
}

pub fn render(profiles: &[AlphaProfile], format: Format, digits: usize) -> String {
    match format {
        Format::Csv => {
            let mut out = format!("{FORMAT_HEADER}\nalpha,tau0,tau1,tau1_prime,tau2,label,lo,hi\n");
            for p in profiles {
                let head = [
                    sig(p.alpha, digits),
                    cell(p.tau0, digits, ""),
                    cell(p.tau1, digits, ""),
                    cell(p.tau1_prime, digits, ""),
                    cell(p.tau2, digits, ""),
                ]
                .join(",");
                for s in &p.segments {
                    out.push_str(&format!(
                        "{head},{},{},{}\n",
                        s.label.as_str(),
                        sig(s.lo, digits),
                        sig(s.hi, digits)
                    ));
                }
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = profiles
                .iter()
                .map(|p| {
                    let mut obj = Map::new();
                    obj.insert("alpha".into(), json!(p.alpha));
                    obj.append(&mut json_fields(
                        &[
                            ("tau0", p.tau0),
                            ("tau1", p.tau1),
                            ("tau1_prime", p.tau1_prime),
                            ("tau2", p.tau2),
                        ],
                        digits,
                    ));
                    let segs: Vec<Value> = p
                        .segments
                        .iter()
                        .map(|s| {
                            let mut o = Map::new();
                            o.insert("label".into(), json!(s.label.as_str()));
                            o.append(&mut json_fields(
                                &[("lo", Some(s.lo)), ("hi", Some(s.hi))],
                                digits,
                            ));
                            Value::Object(o)
                        })
                        .collect();
                    obj.insert("segments".into(), Value::Array(segs));
                    Value::Object(obj)
                })
                .collect();
            let mut body = Map::new();
            body.insert("rows".into(), Value::Array(rows));
            json_document(body)
        }
        Format::Text => {
            let mut out = format!("{FORMAT_HEADER}\n");
            for p in profiles {
                out.push_str(&format!("alpha = {}\n", sig(p.alpha, digits)));
                if let Some(c) = p.covered_from() {
                    out.push_str(&format!("  limit points on [{}, inf)\n", sig(c, digits)));
                }
                for s in &p.segments {
                    out.push_str(&format!(
                        "  [{}, {})  {}\n",
                        sig(s.lo, digits),
                        sig(s.hi, digits),
                        s.label.as_str()
                    ));
                }
            }
            out
        }
    }
}
