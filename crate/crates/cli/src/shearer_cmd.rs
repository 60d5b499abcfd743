use alpha_limit::shearer::{
    build_shearer, classify_regime, convergence_row, epsilon_roots, pairing_check, verify_window,
    ConvergenceRow, PairingReport, Regime, WindowReport, FLOOR_NUDGE,
};
use alpha_limit::{Error, ShearerSequence};
use anyhow::{bail, Result};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::output::{json_document, json_num, sig, text_table, Format, FORMAT_HEADER};

pub struct Run {
    pub seq: ShearerSequence,
    pub regime: Option<Regime>,
    pub row: ConvergenceRow,
    pub epsilon_k: f64,
    pub window: WindowReport,
    pub pairing: Option<PairingReport>,
    pub samples: Vec<ConvergenceRow>,
}

pub fn run(alpha: f64, lambda: f64, k: usize, exploratory: bool, samples: &[usize]) -> Result<Run> {
    let regime = match classify_regime(alpha, lambda) {
        Ok(r) => Some(r),
        Err(Error::OutOfRegime { reason, .. }) if !exploratory => bail!(
            "refusing ({alpha}, {lambda}): not in a covered regime ({reason}); pass --exploratory to compute anyway"
        ),
        Err(Error::OutOfRegime { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let seq = build_shearer(alpha, lambda, k)?;
    let row = convergence_row(alpha, lambda, k)?;
    let epsilon_k = epsilon_roots(&seq, &[k])?[0];
    let window = verify_window(&seq);
    let pairing = match regime {
        Some(Regime::IntervalOne) => Some(pairing_check(&seq)?),
        _ => None,
    };
    let samples = samples
        .par_iter()
        .map(|&s| convergence_row(alpha, lambda, s))
        .collect::<alpha_limit::Result<Vec<_>>>()?;
    Ok(Run {
        seq,
        regime,
        row,
        epsilon_k,
        window,
        pairing,
        samples,
    })
}

fn regime_text(r: &Option<Regime>) -> String {
    match r {
        Some(Regime::IntervalTwo { boundary: true }) => "interval-II (boundary)".into(),
        Some(r) => r.label().into(),
        None => "none (exploratory)".into(),
    }
}

fn convergence_csv(rows: &[ConvergenceRow], digits: usize) -> String {
    let mut out = format!("{FORMAT_HEADER}\nk,rho,gap,sigma,c_over_k,Qk\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.k,
            sig(r.rho, digits),
            sig(r.gap, digits),
            sig(r.sigma, digits),
            sig(r.c_over_k, digits),
            sig(r.qk, digits)
        ));
    }
    out
}

fn row_json(r: &ConvergenceRow, digits: usize) -> Value {
    json!({
        "k": r.k,
        "rho": json_num(r.rho, digits),
        "gap": json_num(r.gap, digits),
        "sigma": json_num(r.sigma, digits),
        "c_over_k": json_num(r.c_over_k, digits),
        "Qk": json_num(r.qk, digits),
        "Qk_saturated": r.qk_saturated,
    })
}

pub fn render(run: &Run, format: Format, digits: usize) -> String {
    let seq = &run.seq;
    let p = seq.params();
    match format {
        Format::Csv => {
            let rows = if run.samples.is_empty() {
                std::slice::from_ref(&run.row)
            } else {
                &run.samples
            };
            convergence_csv(rows, digits)
        }
        Format::Json => {
            let mut body = Map::new();
            body.insert("alpha".into(), json!(p.alpha));
            body.insert("lambda".into(), json!(p.lambda));
            body.insert("k".into(), json!(seq.k()));
            body.insert("r".into(), json!(seq.r()));
            body.insert(
                "b".into(),
                Value::Array(seq.b().iter().map(|&b| json_num(b, digits)).collect()),
            );
            body.insert(
                "regime".into(),
                run.regime.as_ref().map_or(Value::Null, |r| json!(r.label())),
            );
            body.insert(
                "boundary".into(),
                json!(matches!(run.regime, Some(Regime::IntervalTwo { boundary: true }))),
            );
            body.insert("exploratory".into(), json!(run.regime.is_none()));
            body.insert("floor_nudge".into(), json!(FLOOR_NUDGE));
            body.insert("rho".into(), json_num(run.row.rho, digits));
            body.insert("gap".into(), json_num(run.row.gap, digits));
            body.insert("epsilon_k".into(), json_num(run.epsilon_k, digits));
            body.insert("sigma".into(), json_num(run.row.sigma, digits));
            body.insert("c_over_k".into(), json_num(run.row.c_over_k, digits));
            body.insert("Qk".into(), json_num(run.row.qk, digits));
            body.insert("Qk_saturated".into(), json!(run.row.qk_saturated));
            body.insert("window".into(), window_json(&run.window));
            body.insert(
                "pairing".into(),
                run.pairing
                    .as_ref()
                    .map_or(Value::Null, |pr| pairing_json(pr, digits)),
            );
            body.insert(
                "convergence".into(),
                Value::Array(run.samples.iter().map(|r| row_json(r, digits)).collect()),
            );
            json_document(body)
        }
        Format::Text => text(run, digits),
    }
}

fn window_json(w: &WindowReport) -> Value {
    json!({
        "ok": w.ok(),
        "violations": w.violations,
        "below_minus_one_plus_alpha": w.below_minus_one_plus_alpha,
    })
}

fn pairing_json(pr: &PairingReport, digits: usize) -> Value {
    let pairs: Vec<Value> = pr
        .pairs
        .iter()
        .map(|q| {
            json!({
                "left": q.left,
                "right": q.right,
                "product": json_num(q.product, digits),
                "ok": q.ok,
            })
        })
        .collect();
    json!({
        "ok": pr.ok(),
        "bound": json_num(pr.bound, digits),
        "zero_runs": pr.zero_runs,
        "max_run": pr.max_run,
        "pairs": pairs,
    })
}

fn text(run: &Run, digits: usize) -> String {
    let seq = &run.seq;
    let p = seq.params();
    let b: Vec<String> = seq.b().iter().map(|&x| sig(x, digits)).collect();
    let mut lines = vec![
        FORMAT_HEADER.to_string(),
        format!("alpha        {}", sig(p.alpha, digits)),
        format!("lambda       {}", sig(p.lambda, digits)),
        format!("k            {}", seq.k()),
        format!("regime       {}", regime_text(&run.regime)),
        format!("r            {}", seq.compact()),
        format!("b            [{}]", b.join(", ")),
        format!("rho(G_k)     {}", sig(run.row.rho, digits)),
        format!("gap          {}", sig(run.row.gap, digits)),
        format!("epsilon_k    {}", sig(run.epsilon_k, digits)),
        format!("sigma_k      {}", sig(run.row.sigma, digits)),
        format!("C/k          {}", sig(run.row.c_over_k, digits)),
        format!(
            "Q_k          {}{}",
            sig(run.row.qk, digits),
            if run.row.qk_saturated { " (saturated)" } else { "" }
        ),
    ];
    if run.window.ok() {
        lines.push("window       ok".into());
    } else {
        lines.push(format!("window       {} violations", run.window.violations.len()));
        for v in &run.window.violations {
            lines.push(format!("  b_{} = {}  {:?}", v.index, sig(v.value, digits), v.kind));
        }
    }
    if !run.window.below_minus_one_plus_alpha.is_empty() {
        lines.push(format!(
            "b_j <= -1 + alpha at {:?}",
            run.window.below_minus_one_plus_alpha
        ));
    }
    let mut out = lines.join("\n");
    out.push('\n');
    if let Some(pr) = &run.pairing {
        out.push_str(&format!(
            "\npairing (bound (1 - alpha)^2 = {}, longest zero run {}): {}\n",
            sig(pr.bound, digits),
            pr.max_run,
            if pr.ok() { "ok" } else { "FAILED" }
        ));
        let rows: Vec<Vec<String>> = pr
            .pairs
            .iter()
            .map(|q| {
                vec![
                    q.left.to_string(),
                    q.right.to_string(),
                    sig(q.product, digits),
                    if q.ok { "ok" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        out.push_str(&text_table(&["left", "right", "product", ""], &rows));
    }
    if !run.samples.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = run
            .samples
            .iter()
            .map(|r| {
                vec![
                    r.k.to_string(),
                    sig(r.rho, digits),
                    sig(r.gap, digits),
                    sig(r.sigma, digits),
                    sig(r.c_over_k, digits),
                    sig(r.qk, digits),
                ]
            })
            .collect();
        out.push_str(&text_table(&["k", "rho", "gap", "sigma", "c_over_k", "Qk"], &rows));
    }
    out
}
