use std::path::Path;

use alpha_limit::diagonalize::{diagonalize, spectral_radius};
use alpha_limit::tree::a_alpha_weights;
use alpha_limit::{DiagResult, RootedTree, SpectralRadiusResult};
use anyhow::{Context, Result};
use serde_json::{json, Map};

use crate::output::{json_document, json_num, sig, Format, FORMAT_HEADER};

pub struct Run {
    pub n: usize,
    pub alpha: f64,
    pub radius: SpectralRadiusResult,
    /// Diagonalization of `A_alpha + x I`, when `--diag x` was given.
    pub diag: Option<(f64, DiagResult)>,
}

pub fn run(edges: &Path, alpha: f64, tol: f64, diag_shift: Option<f64>) -> Result<Run> {
    let text =
        std::fs::read_to_string(edges).with_context(|| format!("reading {}", edges.display()))?;
    let tree = RootedTree::parse_edge_list(&text)?;
    let m = a_alpha_weights(&tree, alpha)?;
    let radius = spectral_radius(&m, tol)?;
    Ok(Run {
        n: tree.len(),
        alpha,
        radius,
        diag: diag_shift.map(|x| (x, diagonalize(&m, x))),
    })
}

pub fn render(run: &Run, format: Format, digits: usize) -> String {
    let r = &run.radius;
    match format {
        Format::Csv => {
            let mut s = format!(
                "{FORMAT_HEADER}\nn,alpha,rho,lower,upper,iterations,converged\n{},{},{},{},{},{},{}\n",
                run.n,
                sig(run.alpha, digits),
                sig(r.value, digits),
                sig(r.lower, digits),
                sig(r.upper, digits),
                r.iterations,
                r.converged
            );
            if let Some((x, d)) = &run.diag {
                s.push_str(&format!(
                    "# diagonalization of A_alpha + {} I: n_pos={} n_neg={} n_zero={}\nvertex,d\n",
                    sig(*x, digits),
                    d.n_pos,
                    d.n_neg,
                    d.n_zero
                ));
                for (v, dv) in d.d.iter().enumerate() {
                    s.push_str(&format!("{},{}\n", v + 1, sig(*dv, digits)));
                }
            }
            s
        }
        Format::Json => {
            let mut body = Map::new();
            body.insert("n".into(), json!(run.n));
            body.insert("alpha".into(), json!(run.alpha));
            body.insert("rho".into(), json_num(r.value, digits));
            body.insert("lower".into(), json_num(r.lower, digits));
            body.insert("upper".into(), json_num(r.upper, digits));
            body.insert("iterations".into(), json!(r.iterations));
            body.insert("converged".into(), json!(r.converged));
            if let Some((x, d)) = &run.diag {
                body.insert("shift".into(), json!(x));
                body.insert(
                    "diag".into(),
                    serde_json::from_str(&d.to_json()).expect("DiagResult json"),
                );
            }
            json_document(body)
        }
        Format::Text => {
            let mut s = format!(
                "{FORMAT_HEADER}\nn            {}\nalpha        {}\nrho          {}\nbracket      [{}, {}]\niterations   {}{}\n",
                run.n,
                sig(run.alpha, digits),
                sig(r.value, digits),
                sig(r.lower, digits),
                sig(r.upper, digits),
                r.iterations,
                if r.converged { "" } else { " (not converged)" }
            );
            if let Some((x, d)) = &run.diag {
                let ds: Vec<String> = d.d.iter().map(|v| sig(*v, digits)).collect();
                s.push_str(&format!(
                    "A_alpha + {} I: n_pos {}, n_neg {}, n_zero {}\nd            [{}]\n",
                    sig(*x, digits),
                    d.n_pos,
                    d.n_neg,
                    d.n_zero,
                    ds.join(", ")
                ));
            }
            s
        }
    }
}
