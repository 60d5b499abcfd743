//! alpha-Shearer caterpillars and their convergence diagnostics.
//!
//! For a target `lambda > 2`, the caterpillar `G_k = [r_1, .., r_k]` is
//! built greedily from one end of the spine: each `r_j` is the largest
//! pendant count that keeps the spine pivot `b_j` of `A_alpha - lambda I`
//! below the repelling fixed point `theta'`. The spectral radii of `G_k`
//! then climb toward `lambda` whenever the pivots stay far enough from zero.

use serde::Serialize;

use crate::alpha::{alpha_star, tau1_interval, tau2, AlphaLambda};
use crate::diagonalize::spectral_radius;
use crate::error::{Error, Result};
use crate::roots::bisect_predicate;
use crate::tree::{a_alpha_weights, make_caterpillar, CaterpillarSpec};

/// Added before every floor so values that are integral in exact
/// arithmetic but land one ulp low still round up.
pub const FLOOR_NUDGE: f64 = 1e-12;

/// Relative bracket width for the epsilon roots.
pub const EPSILON_REL_TOL: f64 = 1e-13;

/// Divergence sums are capped here.
pub const SUM_CAP: f64 = 1e300;

/// Pivot before pendant vertices are added at spine position `j` (0-based).
///
/// A lone spine vertex (k = 1) has no spine neighbours: `-lambda`.
fn base_value(p: &AlphaLambda, j: usize, k: usize, prev: f64) -> f64 {
    if k == 1 {
        -p.lambda
    } else if j == 0 {
        p.alpha - p.lambda
    } else if j + 1 == k {
        p.phi_unchecked(prev) - p.alpha
    } else {
        p.phi_unchecked(prev)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShearerSequence {
    params: AlphaLambda,
    r: Vec<u32>,
    b: Vec<f64>,
    db: Vec<f64>,
}

#[derive(Serialize)]
struct SequenceJson<'a> {
    alpha: f64,
    lambda: f64,
    k: usize,
    r: &'a [u32],
    b: &'a [f64],
}

/// The alpha-Shearer sequence of length `k` for `lambda`.
pub fn build_shearer(alpha: f64, lambda: f64, k: usize) -> Result<ShearerSequence> {
    let p = AlphaLambda::new(alpha, lambda)?;
    if k == 0 {
        return Err(crate::error::domain("k", 0.0, "k >= 1"));
    }
    let mut r = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    let mut prev = 0.0;
    for j in 0..k {
        let base = base_value(&p, j, k, prev);
        let v = (p.theta_prime - base) / p.delta;
        let count = (v + FLOOR_NUDGE).floor();
        if count < 0.0 {
            return Err(Error::NegativeCount {
                index: j + 1,
                value: count,
            });
        }
        prev = base + count * p.delta;
        r.push(count as u32);
        b.push(prev);
    }
    let db = derivatives(&p, &r, &b);
    Ok(ShearerSequence { params: p, r, b, db })
}

fn derivatives(p: &AlphaLambda, r: &[u32], b: &[f64]) -> Vec<f64> {
    let u = p.lambda - p.alpha;
    let pendant = p.w2() / (u * u);
    let mut db = Vec::with_capacity(r.len());
    for j in 0..r.len() {
        let mut d = 1.0 + r[j] as f64 * pendant;
        if j > 0 {
            d += p.w2() / (b[j - 1] * b[j - 1]) * db[j - 1];
        }
        db.push(d);
    }
    db
}

impl ShearerSequence {
    /// Runs the pivot recurrence with prescribed counts instead of the
    /// greedy ones. Useful for probing the maximality check.
    pub fn from_counts(alpha: f64, lambda: f64, r: Vec<u32>) -> Result<Self> {
        let p = AlphaLambda::new(alpha, lambda)?;
        if r.is_empty() {
            return Err(crate::error::domain("k", 0.0, "k >= 1"));
        }
        let k = r.len();
        let mut b = Vec::with_capacity(k);
        let mut prev = 0.0;
        for (j, &count) in r.iter().enumerate() {
            if j > 0 && prev == 0.0 {
                return Err(Error::InvalidTree(format!("zero pivot at spine vertex {j}")));
            }
            prev = base_value(&p, j, k, prev) + count as f64 * p.delta;
            b.push(prev);
        }
        let db = derivatives(&p, &r, &b);
        Ok(Self { params: p, r, b, db })
    }

    pub fn params(&self) -> &AlphaLambda {
        &self.params
    }

    pub fn k(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// d b_j / d epsilon at epsilon = 0, with lambda replaced by lambda - epsilon.
    pub fn db(&self) -> &[f64] {
        &self.db
    }

    pub fn spec(&self) -> CaterpillarSpec {
        CaterpillarSpec::new(self.r.clone()).expect("k >= 1")
    }

    /// `[r_1, r_2, .., r_k]`
    pub fn compact(&self) -> String {
        self.spec().to_string()
    }

    /// `{"alpha", "lambda", "k", "r", "b"}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SequenceJson {
            alpha: self.params.alpha,
            lambda: self.params.lambda,
            k: self.k(),
            r: &self.r,
            b: &self.b,
        })
        .expect("sequence serializes")
    }

    /// Whether every pivot of `[r_1, .., r_upto]` at `lambda - eps` is
    /// negative. Stops at the first one that is not.
    fn perturbed_all_negative(&self, eps: f64, upto: usize) -> bool {
        let p = &self.params;
        let l = p.lambda - eps;
        let w2 = p.w2();
        let delta = p.alpha + w2 / (l - p.alpha);
        let k = upto;
        let mut prev = 0.0;
        for j in 0..k {
            let base = if k == 1 {
                -l
            } else if j == 0 {
                p.alpha - l
            } else {
                let phi = 2.0 * p.alpha - l - w2 / prev;
                if j + 1 == k {
                    phi - p.alpha
                } else {
                    phi
                }
            };
            prev = base + self.r[j] as f64 * delta;
            if prev >= 0.0 {
                return false;
            }
        }
        true
    }
}

/// Smallest positive root of `b_j(eps)` for each requested `j` (1-based),
/// where `b_j(eps)` is the last pivot of `G_j = [r_1, .., r_j]` at
/// `lambda - eps`. This is `lambda - rho(G_j)`, up to the resolution of
/// `lambda - eps` in double precision.
///
/// Indices are processed in increasing order so each root brackets the
/// next; the result follows the order of `j_list`.
pub fn epsilon_roots(seq: &ShearerSequence, j_list: &[usize]) -> Result<Vec<f64>> {
    if let Some(&bad) = j_list.iter().find(|&&j| j == 0 || j > seq.k()) {
        return Err(crate::error::domain("j", bad as f64, "1 <= j <= k"));
    }
    let mut sorted: Vec<usize> = j_list.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut bound = seq.params.lambda - seq.params.alpha;
    let mut found = Vec::with_capacity(sorted.len());
    for &j in &sorted {
        let above = |eps: f64| !seq.perturbed_all_negative(eps, j);
        let (lo, hi) = bisect_predicate(above, 0.0, bound, EPSILON_REL_TOL);
        let eps = lo + 0.5 * (hi - lo);
        found.push((j, eps));
        bound = hi;
    }
    Ok(j_list
        .iter()
        .map(|j| found.iter().find(|(i, _)| i == j).expect("computed").1)
        .collect())
}

/// Root of the tangent line to `eps -> b_k(eps)` at 0: `-b_k / b_k'(0)`.
pub fn sigma_bound(seq: &ShearerSequence) -> f64 {
    let k = seq.k();
    -seq.b[k - 1] / seq.db[k - 1]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceSum {
    pub value: f64,
    pub saturated: bool,
}

/// `sum_{m=1}^{k-1} prod_{i=1}^{m} (1 - alpha)^2 / b_{k-i}^2`, accumulated
/// as `S <- c_j (1 + S)` over `j = 1..k-1` and capped at [`SUM_CAP`].
pub fn divergence_sum(seq: &ShearerSequence) -> DivergenceSum {
    let w2 = seq.params.w2();
    let mut s = 0.0;
    let mut saturated = false;
    for &bj in &seq.b[..seq.k() - 1] {
        s = w2 / (bj * bj) * (1.0 + s);
        if !(s <= SUM_CAP) {
            s = SUM_CAP;
            saturated = true;
        }
    }
    DivergenceSum {
        value: s,
        saturated,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// `b_j >= 0`
    NonNegative,
    /// `b_j >= theta'`
    AboveUpper,
    /// `b_j <= theta' - delta` at an index below k
    BelowLower,
    /// `b_j + delta < theta'`: one more pendant would still fit.
    NotMaximal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowViolation {
    /// 1-based
    pub index: usize,
    pub kind: ViolationKind,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowReport {
    pub violations: Vec<WindowViolation>,
    /// Indices (1-based) with `b_j <= -1 + alpha`. Not a violation; these
    /// are the pivots where `(1 - alpha)^2 / b_j^2 <= 1`, which cannot
    /// happen above tau2.
    pub below_minus_one_plus_alpha: Vec<usize>,
}

impl WindowReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `theta' - delta < b_j < theta'` (the lower bound only below k),
/// `b_j < 0`, and that every `r_j` is maximal.
pub fn verify_window(seq: &ShearerSequence) -> WindowReport {
    let p = &seq.params;
    let k = seq.k();
    let mut violations = Vec::new();
    let mut low = Vec::new();
    for (i, &bj) in seq.b.iter().enumerate() {
        let index = i + 1;
        let mut flag = |kind| {
            violations.push(WindowViolation {
                index,
                kind,
                value: bj,
            })
        };
        if bj >= 0.0 {
            flag(ViolationKind::NonNegative);
        }
        if bj >= p.theta_prime {
            flag(ViolationKind::AboveUpper);
        }
        if index < k && bj <= p.theta_prime - p.delta {
            flag(ViolationKind::BelowLower);
        }
        if bj + p.delta < p.theta_prime {
            flag(ViolationKind::NotMaximal);
        }
        if bj <= -1.0 + p.alpha {
            low.push(index);
        }
    }
    WindowReport {
        violations,
        below_minus_one_plus_alpha: low,
    }
}

/// Which covered region `(alpha, lambda)` lies in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "label")]
pub enum Regime {
    /// `lambda >= tau2(alpha)`, alpha < 1/2. `boundary` when `lambda` is
    /// within 1e-12 of tau2.
    #[serde(rename = "interval-II")]
    IntervalTwo { boundary: bool },
    /// `tau1(alpha) <= lambda < tau1'(alpha)`, alpha < alpha*.
    #[serde(rename = "interval-I")]
    IntervalOne,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::IntervalTwo { .. } => "interval-II",
            Regime::IntervalOne => "interval-I",
        }
    }
}

const BOUNDARY_TOL: f64 = 1e-12;

/// The covered region containing `(alpha, lambda)`, or an
/// [`Error::OutOfRegime`] naming the thresholds that were missed.
pub fn classify_regime(alpha: f64, lambda: f64) -> Result<Regime> {
    AlphaLambda::new(alpha, lambda)?;
    let mut reasons = Vec::new();
    match tau2(alpha) {
        Ok(t2) if lambda >= t2 - BOUNDARY_TOL => {
            return Ok(Regime::IntervalTwo {
                boundary: (lambda - t2).abs() <= BOUNDARY_TOL,
            })
        }
        Ok(t2) => reasons.push(format!("lambda < tau2 = {t2}")),
        Err(_) => reasons.push("alpha >= 1/2, tau2 undefined".to_string()),
    }
    if let Some(r) = interval_one(alpha, lambda, &mut reasons) {
        return Ok(r);
    }
    Err(Error::OutOfRegime {
        alpha,
        lambda,
        reason: reasons.join("; "),
    })
}

fn interval_one(alpha: f64, lambda: f64, reasons: &mut Vec<String>) -> Option<Regime> {
    match tau1_interval(alpha) {
        Ok((t1, t1p)) if t1 <= lambda && lambda < t1p => Some(Regime::IntervalOne),
        Ok((t1, t1p)) => {
            reasons.push(format!("lambda outside [tau1, tau1') = [{t1}, {t1p})"));
            None
        }
        Err(_) => {
            reasons.push(format!("alpha >= alpha* = {}", alpha_star().0));
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairProduct {
    /// 1-based indices
    pub left: usize,
    pub right: usize,
    pub product: f64,
    /// `product < (1 - alpha)^2`
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingReport {
    /// Maximal runs of zero counts, as 1-based inclusive `(start, end)`.
    pub zero_runs: Vec<(usize, usize)>,
    pub max_run: usize,
    pub pairs: Vec<PairProduct>,
    /// `(1 - alpha)^2`
    pub bound: f64,
}

impl PairingReport {
    pub fn ok(&self) -> bool {
        self.pairs.iter().all(|p| p.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairProduct> {
        self.pairs.iter().filter(|p| !p.ok)
    }
}

/// Maximal runs of `r_j = 0`, 1-based inclusive.
pub fn zero_runs(r: &[u32]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = None;
    for (i, &c) in r.iter().enumerate() {
        match (c == 0, start) {
            (true, None) => start = Some(i + 1),
            (false, Some(s)) => {
                runs.push((s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, r.len()));
    }
    runs
}

/// For each zero run `r_s..r_e` followed by a nonzero count, pairs the
/// pivots symmetrically around the gap between `e` and `e + 1`:
/// `b_{e-i+1} b_{e+i}` for `i = 1..=e-s+2`, as far as both indices lie in
/// `1..k-1`. Only defined for `tau1 <= lambda < tau1'`.
pub fn pairing_check(seq: &ShearerSequence) -> Result<PairingReport> {
    let p = &seq.params;
    let mut reasons = Vec::new();
    if interval_one(p.alpha, p.lambda, &mut reasons).is_none() {
        return Err(Error::OutOfRegime {
            alpha: p.alpha,
            lambda: p.lambda,
            reason: reasons.join("; "),
        });
    }
    let k = seq.k();
    let bound = p.w2();
    let runs = zero_runs(&seq.r);
    let mut pairs = Vec::new();
    for &(s, e) in &runs {
        if e >= k {
            continue;
        }
        for i in 1..=(e - s + 2) {
            if i > e || e + i > k - 1 {
                break;
            }
            let (left, right) = (e - i + 1, e + i);
            let product = seq.b[left - 1] * seq.b[right - 1];
            pairs.push(PairProduct {
                left,
                right,
                product,
                ok: product < bound,
            });
        }
    }
    Ok(PairingReport {
        max_run: runs.iter().map(|(s, e)| e - s + 1).max().unwrap_or(0),
        zero_runs: runs,
        pairs,
        bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub k: usize,
    pub rho: f64,
    pub gap: f64,
    pub sigma: f64,
    pub c_over_k: f64,
    #[serde(rename = "Qk")]
    pub qk: f64,
    pub qk_saturated: bool,
}

impl ConvergenceRow {
    /// `0 < gap <= sigma` and, with `c_bound`, `gap <= C / k`.
    pub fn bounds_hold(&self, c_bound: bool) -> bool {
        self.gap > 0.0 && self.gap <= self.sigma && (!c_bound || self.gap <= self.c_over_k)
    }
}

/// Radius and diagnostics of `G_k`.
pub fn convergence_row(alpha: f64, lambda: f64, k: usize) -> Result<ConvergenceRow> {
    let seq = build_shearer(alpha, lambda, k)?;
    let m = a_alpha_weights(&make_caterpillar(&seq.spec()), alpha)?;
    // run to double resolution
    let rho = spectral_radius(&m, f64::MIN_POSITIVE)?.value;
    let p = seq.params();
    let q = divergence_sum(&seq);
    Ok(ConvergenceRow {
        k,
        rho,
        gap: lambda - rho,
        sigma: sigma_bound(&seq),
        c_over_k: (p.delta - p.theta_prime) / k as f64,
        qk: q.value,
        qk_saturated: q.saturated,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub alpha: f64,
    pub lambda: f64,
    /// `None` in exploratory mode outside every covered region.
    pub regime: Option<Regime>,
    pub exploratory: bool,
    pub floor_nudge: f64,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\nk,rho,gap,sigma,c_over_k,Qk\n", crate::FORMAT_HEADER);
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.k, r.rho, r.gap, r.sigma, r.c_over_k, r.qk
            ));
        }
        out
    }
}

/// Builds `G_k` for each sample and fills in radius, gap and bounds.
/// Outside the covered regions this refuses unless `exploratory` is set.
pub fn convergence_report(
    alpha: f64,
    lambda: f64,
    k_samples: &[usize],
    exploratory: bool,
) -> Result<ConvergenceReport> {
    let regime = match classify_regime(alpha, lambda) {
        Ok(r) => Some(r),
        Err(e @ Error::OutOfRegime { .. }) if !exploratory => return Err(e),
        Err(Error::OutOfRegime { .. }) => None,
        Err(e) => return Err(e),
    };
    let rows = k_samples
        .iter()
        .map(|&k| convergence_row(alpha, lambda, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        alpha,
        lambda,
        regime,
        exploratory,
        floor_nudge: FLOOR_NUDGE,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonalize::diagonalize;

    #[test]
    fn pivots_match_diagonalize_on_the_caterpillar() {
        for &(a, l) in &[(0.1, 2.44), (0.01, 2.06), (0.3, 5.0), (0.0, 2.2)] {
            let seq = build_shearer(a, l, 40).unwrap();
            let m = a_alpha_weights(&make_caterpillar(&seq.spec()), a).unwrap();
            let d = diagonalize(&m, -l).d;
            // compare while the accumulated rounding amplification is modest
            let mut amp = 1.0;
            let w2 = seq.params().w2();
            for j in 0..40 {
                if amp > 1e4 {
                    assert!(j >= 4, "({a}, {l}) compared only {j} pivots");
                    break;
                }
                assert!((d[j] - seq.b()[j]).abs() < 1e-10, "({a}, {l}) j={j}");
                amp *= w2 / (seq.b()[j] * seq.b()[j]);
            }
        }
    }

    #[test]
    fn every_step_matches_diagonalize() {
        // Rounding differences grow by (1 - alpha)^2 / b_j^2 per step, so long
        // spines are compared one step at a time: diagonalize's own previous
        // pivot fed through the recurrence must give its next pivot.
        for &(a, l, k) in &[(0.1, 2.44, 100), (0.01, 2.06, 100), (0.25, 3.0, 160)] {
            let seq = build_shearer(a, l, k).unwrap();
            let p = seq.params();
            let m = a_alpha_weights(&make_caterpillar(&seq.spec()), a).unwrap();
            let d = diagonalize(&m, -l).d;
            for j in 0..k {
                let step = base_value(p, j, k, if j > 0 { d[j - 1] } else { 0.0 })
                    + seq.r()[j] as f64 * p.delta;
                assert!((d[j] - step).abs() < 1e-12, "({a}, {l}) j={j}");
            }
        }
    }

    #[test]
    fn k_one_uses_both_end_terms() {
        let seq = build_shearer(0.1, 2.5, 1).unwrap();
        let p = seq.params();
        let r1 = seq.r()[0] as f64;
        assert_eq!(r1, ((p.theta_prime + 2.5) / p.delta + FLOOR_NUDGE).floor());
        assert!((seq.b()[0] - (-2.5 + r1 * p.delta)).abs() < 1e-15);
        let u = 2.5 - 0.1;
        let db1 = 1.0 + r1 * p.w2() / (u * u);
        assert!((sigma_bound(&seq) + seq.b()[0] / db1).abs() < 1e-15);
    }

    #[test]
    fn window_holds_after_build() {
        for &(a, l) in &[(0.1, 2.44), (0.01, 2.06), (0.4, 6.0), (0.2, 2.3)] {
            let seq = build_shearer(a, l, 200).unwrap();
            assert!(verify_window(&seq).ok(), "({a}, {l})");
            assert!(seq.db().iter().all(|&d| d >= 1.0));
        }
    }

    #[test]
    fn incremented_count_breaks_maximality_elsewhere() {
        let seq = build_shearer(0.1, 2.44, 10).unwrap();
        let mut r = seq.r().to_vec();
        r[0] += 1;
        let bumped = ShearerSequence::from_counts(0.1, 2.44, r).unwrap();
        let rep = verify_window(&bumped);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.index == 1 && v.kind == ViolationKind::AboveUpper));

        let mut r = seq.r().to_vec();
        r[0] -= 1;
        let short = ShearerSequence::from_counts(0.1, 2.44, r).unwrap();
        assert!(verify_window(&short)
            .violations
            .iter()
            .any(|v| v.index == 1 && v.kind == ViolationKind::NotMaximal));
    }

    #[test]
    fn from_counts_reproduces_build() {
        let seq = build_shearer(0.1, 2.44, 30).unwrap();
        let again = ShearerSequence::from_counts(0.1, 2.44, seq.r().to_vec()).unwrap();
        assert_eq!(seq, again);
    }

    #[test]
    fn above_tau2_pivots_exceed_minus_one_plus_alpha() {
        let seq = build_shearer(0.1, 2.44, 200).unwrap();
        assert!(verify_window(&seq).below_minus_one_plus_alpha.is_empty());
        let q = divergence_sum(&seq);
        assert!(q.value > 199.0);
    }

    #[test]
    fn epsilon_roots_decrease_and_bound_sigma() {
        let seq = build_shearer(0.1, 2.44, 50).unwrap();
        let js: Vec<usize> = (1..=50).collect();
        let eps = epsilon_roots(&seq, &js).unwrap();
        for w in eps.windows(2).take(20) {
            assert!(w[1] < w[0]);
        }
        let eps_k = *eps.last().unwrap();
        assert!(eps_k <= sigma_bound(&seq) * (1.0 + 1e-9));
        // slightly above eps_1 the first pivot is positive
        assert!(!seq.perturbed_all_negative(eps[0] * (1.0 + 1e-9), 1));
    }

    #[test]
    fn epsilon_root_is_the_gap() {
        let k = 10;
        let seq = build_shearer(0.1, 2.44, k).unwrap();
        let eps = epsilon_roots(&seq, &[k]).unwrap()[0];
        let row = convergence_row(0.1, 2.44, k).unwrap();
        assert!((eps - row.gap).abs() <= 1e-12 * row.gap.max(1e-3));
    }

    #[test]
    fn epsilon_order_follows_request() {
        let seq = build_shearer(0.1, 2.44, 12).unwrap();
        let a = epsilon_roots(&seq, &[12, 3, 7]).unwrap();
        let b = epsilon_roots(&seq, &[3, 7, 12]).unwrap();
        assert_eq!(a, vec![b[2], b[0], b[1]]);
        assert!(epsilon_roots(&seq, &[0]).is_err());
        assert!(epsilon_roots(&seq, &[13]).is_err());
    }

    #[test]
    fn zero_runs_found() {
        assert_eq!(zero_runs(&[2, 0, 0, 1, 0, 3, 0]), vec![(2, 3), (5, 5), (7, 7)]);
        assert!(zero_runs(&[1, 1]).is_empty());
    }

    #[test]
    fn pairing_refuses_outside_interval_one() {
        let seq = build_shearer(0.3, 5.0, 30).unwrap();
        assert!(matches!(pairing_check(&seq), Err(Error::OutOfRegime { .. })));
    }

    #[test]
    fn regimes() {
        assert_eq!(classify_regime(0.1, 2.44).unwrap(), Regime::IntervalTwo { boundary: false });
        assert_eq!(classify_regime(0.01, 2.06).unwrap(), Regime::IntervalOne);
        let t2 = tau2(0.3).unwrap();
        assert_eq!(classify_regime(0.3, t2).unwrap(), Regime::IntervalTwo { boundary: true });
        match classify_regime(0.22, 2.4) {
            Err(Error::OutOfRegime { reason, .. }) => assert!(reason.contains("tau2")),
            other => panic!("{other:?}"),
        }
        assert!(classify_regime(0.6, 5.0).is_err());
    }

    #[test]
    fn report_requires_regime_unless_exploratory() {
        assert!(convergence_report(0.22, 2.4, &[20], false).is_err());
        let rep = convergence_report(0.22, 2.4, &[20], true).unwrap();
        assert_eq!(rep.regime, None);
        assert_eq!(rep.rows.len(), 1);
    }

    #[test]
    fn radii_increase_with_k() {
        let rep = convergence_report(0.25, 3.0, &[5, 10, 15, 20], false).unwrap();
        for w in rep.rows.windows(2) {
            assert!(w[1].rho > w[0].rho);
        }
        for row in &rep.rows {
            assert!(row.bounds_hold(true), "{row:?}");
        }
    }

    #[test]
    fn exports() {
        let seq = build_shearer(0.1, 2.44, 5).unwrap();
        assert!(seq.compact().starts_with("[4, 0, 1, 1, "));
        let v: serde_json::Value = serde_json::from_str(&seq.to_json()).unwrap();
        assert_eq!(v["k"], 5);
        assert_eq!(v["r"].as_array().unwrap().len(), 5);
        assert_eq!(v["b"].as_array().unwrap().len(), 5);
        let rep = convergence_report(0.1, 2.44, &[5], false).unwrap();
        let csv = rep.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(crate::FORMAT_HEADER));
        assert_eq!(lines.next(), Some("k,rho,gap,sigma,c_over_k,Qk"));
        assert!(lines.next().unwrap().starts_with("5,"));
    }
}
