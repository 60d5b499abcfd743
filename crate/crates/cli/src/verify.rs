use alpha_limit::alpha::{
    alpha_star, corollary_crossover, cubic_discriminant_d, f0, f1, f3, quartic_p_alpha, tau0,
    AlphaLambda,
};
use alpha_limit::diagonalize::diagonalize;
use alpha_limit::oracle::dense_spectrum_oracle;
use alpha_limit::shearer::{build_shearer, convergence_row, pairing_check, verify_window};
use alpha_limit::tree::{a_alpha_weights, random_tree};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map};

use crate::output::{json_document, text_table, Format, FORMAT_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Inertia,
    Identities,
    Examples,
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

pub const INERTIA_SEED: u64 = 7;
pub const INERTIA_CASES: usize = 200;

pub fn run(suite: Suite) -> Vec<Check> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Inertia | Suite::All) {
        inertia(&mut out);
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        identities(&mut out);
    }
    if matches!(suite, Suite::Examples | Suite::All) {
        examples(&mut out);
    }
    out
}

fn push(out: &mut Vec<Check>, suite: &'static str, name: &str, ok: bool, detail: String) {
    out.push(Check {
        suite,
        name: name.into(),
        ok,
        detail,
    });
}

fn inertia(out: &mut Vec<Check>) {
    let mut rng = ChaCha8Rng::seed_from_u64(INERTIA_SEED);
    let mut mismatches = 0;
    let mut bad_sum = 0;
    let mut first = String::new();
    for case in 0..INERTIA_CASES {
        let n = rng.gen_range(1..=12);
        let a: f64 = rng.gen_range(0.0..=1.0);
        let c: f64 = rng.gen_range(-4.0..4.0);
        let m = a_alpha_weights(&random_tree(n, &mut rng), a).expect("alpha in [0, 1]");
        let eig = dense_spectrum_oracle(&m).expect("n <= 12");
        let r = diagonalize(&m, -c);
        if r.n_pos + r.n_neg + r.n_zero != n {
            bad_sum += 1;
        }
        let count = |pred: &dyn Fn(f64) -> bool| eig.iter().filter(|&&e| pred(e)).count();
        let pos = (count(&|e| e > c + 1e-8), count(&|e| e > c - 1e-8));
        let neg = (count(&|e| e < c - 1e-8), count(&|e| e < c + 1e-8));
        let within = |v: usize, (lo, hi): (usize, usize)| lo <= v && v <= hi;
        if !(within(r.n_pos, pos) && within(r.n_neg, neg)) {
            mismatches += 1;
            if first.is_empty() {
                first = format!("first mismatch: case {case}, n={n}, alpha={a}, c={c}");
            }
        }
    }
    push(
        out,
        "inertia",
        "positive/negative counts match dense oracle",
        mismatches == 0,
        format!("{INERTIA_CASES} random trees, {mismatches} mismatches {first}")
            .trim_end()
            .into(),
    );
    push(
        out,
        "inertia",
        "n_pos + n_neg + n_zero = n",
        bad_sum == 0,
        format!("{bad_sum} failures"),
    );
}

fn identities(out: &mut Vec<Check>) {
    let mut worst = [0.0f64; 3];
    for i in 0..100 {
        let l = 2.01 + (50.0 - 2.01) * i as f64 / 99.0;
        for j in 0..20 {
            let a = 0.49 * j as f64 / 19.0;
            let lhs = f1(l, a);
            worst[0] = worst[0].max((lhs + f0(l, a) * f3(l, a)).abs() / (1.0 + lhs.abs()));
            let p = AlphaLambda::new(a, l).expect("grid is in the domain");
            worst[1] = worst[1].max((p.theta * p.theta_prime - (1.0 - a) * (1.0 - a)).abs());
            worst[2] = worst[2].max((p.theta + p.theta_prime - (2.0 * a - l)).abs());
        }
    }
    for (name, w) in [
        "F1 = -F0 F3 on 100x20 grid",
        "theta theta' = (1 - alpha)^2",
        "theta + theta' = 2 alpha - lambda",
    ]
    .iter()
    .zip(worst)
    {
        push(out, "identities", name, w <= 1e-10, format!("worst residual {w:e}"));
    }
    let mut worst_p: f64 = 0.0;
    for a in [0.0, 0.1, 0.3, 0.5] {
        let t = tau0(a).expect("alpha in [0, 1]");
        worst_p = worst_p.max(quartic_p_alpha(t, a).abs());
    }
    push(
        out,
        "identities",
        "P_alpha(tau0(alpha)) = 0",
        worst_p <= 1e-8,
        format!("worst {worst_p:e}"),
    );
    let d = cubic_discriminant_d(0.25).expect("in domain");
    let want = -176823.0 / 4096.0;
    push(
        out,
        "identities",
        "d(1/4) = -176823/4096",
        (d - want).abs() <= 1e-12,
        format!("{d}"),
    );
    let (a, l) = alpha_star();
    push(
        out,
        "identities",
        "F0 and F3 vanish at (alpha*, lambda*)",
        f0(l, a).abs() <= 1e-10 && f3(l, a).abs() <= 1e-10,
        format!("F0 {:e}, F3 {:e}", f0(l, a), f3(l, a)),
    );
    let (a, l) = corollary_crossover();
    let t = alpha_limit::alpha::tau2(a).expect("alpha < 1/2");
    push(
        out,
        "identities",
        "tau2 meets tau1' at the crossover",
        (t - l).abs() <= 1e-8,
        format!("tau2 = {t}, lambda = {l}"),
    );
}

const R_244: [u32; 100] = [
    4, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 0, 1, 1,
    1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1,
    1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1,
    0, 1, 0, 0,
];

fn examples(out: &mut Vec<Check>) {
    let seq = build_shearer(0.1, 2.44, 100).expect("valid parameters");
    push(
        out,
        "examples",
        "alpha=0.1 lambda=2.44: r-list",
        seq.r() == R_244,
        seq.compact(),
    );
    push(
        out,
        "examples",
        "alpha=0.1 lambda=2.44: window",
        verify_window(&seq).ok() && verify_window(&seq).below_minus_one_plus_alpha.is_empty(),
        String::new(),
    );
    let row = convergence_row(0.1, 2.44, 100).expect("valid parameters");
    push(
        out,
        "examples",
        "alpha=0.1 lambda=2.44: rho(G_100) = 2.4399999999999995",
        (row.rho - 2.4399999999999995).abs() <= 1e-9 && row.gap < 1e-10,
        format!("rho = {}", row.rho),
    );

    let seq = build_shearer(0.01, 2.06, 100).expect("valid parameters");
    let mut r = vec![0u32; 100];
    r[0] = 2;
    for i in [11, 35, 60, 84] {
        r[i - 1] = 1;
    }
    push(
        out,
        "examples",
        "alpha=0.01 lambda=2.06: r-list",
        seq.r() == r.as_slice(),
        seq.compact(),
    );
    let b1 = seq.b()[0];
    push(
        out,
        "examples",
        "alpha=0.01 lambda=2.06: b_1 = -1.0738048780487808",
        (b1 - -1.0738048780487808).abs() <= 1e-12,
        format!("{b1}"),
    );
    match pairing_check(&seq) {
        Ok(pr) => {
            for (l, rr, want) in [
                (10, 11, 0.9780973959081004),
                (9, 12, 0.9768462311806901),
                (1, 20, 0.8888252835590791),
            ] {
                let got = pr.pairs.iter().find(|q| q.left == l && q.right == rr);
                push(
                    out,
                    "examples",
                    &format!("alpha=0.01 lambda=2.06: b_{l} b_{rr} = {want}"),
                    got.is_some_and(|q| (q.product - want).abs() <= 1e-10 && q.ok),
                    got.map(|q| q.product.to_string()).unwrap_or_default(),
                );
            }
            push(
                out,
                "examples",
                "alpha=0.01 lambda=2.06: all pairings below (1 - alpha)^2",
                pr.ok(),
                format!("{} pairs, longest zero run {}", pr.pairs.len(), pr.max_run),
            );
        }
        Err(e) => push(out, "examples", "alpha=0.01 lambda=2.06: pairing", false, e.to_string()),
    }
    let row = convergence_row(0.01, 2.06, 100).expect("valid parameters");
    push(
        out,
        "examples",
        "alpha=0.01 lambda=2.06: rho(G_100) = 2.059998455508993",
        (row.rho - 2.059998455508993).abs() <= 1e-9,
        format!("rho = {}", row.rho),
    );
}

pub fn render(checks: &[Check], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = format!("{FORMAT_HEADER}\nsuite,check,status,detail\n");
            for c in checks {
                s.push_str(&format!(
                    "{},\"{}\",{},\"{}\"\n",
                    c.suite,
                    c.name.replace('"', "\"\""),
                    if c.ok { "PASS" } else { "FAIL" },
                    c.detail.replace('"', "\"\"")
                ));
            }
            s
        }
        Format::Json => {
            let mut body = Map::new();
            body.insert("ok".into(), json!(checks.iter().all(|c| c.ok)));
            body.insert("checks".into(), json!(checks));
            json_document(body)
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![
                        if c.ok { "PASS" } else { "FAIL" }.to_string(),
                        c.suite.to_string(),
                        c.name.clone(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            let failed = checks.iter().filter(|c| !c.ok).count();
            format!(
                "{FORMAT_HEADER}\n{}{} checks, {failed} failed\n",
                text_table(&["status", "suite", "check", "detail"], &rows),
                checks.len()
            )
        }
    }
}
