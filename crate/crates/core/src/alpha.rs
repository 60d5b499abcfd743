//! Closed-form analysis in the (alpha, lambda) plane.
//!
//! For `lambda > 2` the map `phi(t) = 2 alpha - lambda - (1 - alpha)^2 / t`
//! has two negative fixed points `theta < theta' < 0`. Together with the
//! per-pendant drift `delta = alpha + (1 - alpha)^2 / (lambda - alpha)` they
//! define
//!
//! ```text
//! F0 = delta - (theta' - theta)          root tau0    (starlike limit)
//! F1 = (2a - l + delta)(theta' - delta) - 2(1 - a)^2 = -F0 * F3
//! F2 = -1 + alpha + delta - theta'       root tau2
//! F3 = delta + theta'                    root tau1'
//! ```
//!
//! Every `lambda` above `tau2(alpha)` (alpha < 1/2) is an A_alpha limit
//! point, and so is every `lambda` in `[tau1, tau1')` for alpha below
//! `alpha* = (3 - sqrt 2) / 7`, where `tau1 = tau0`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::roots::{bisect_newton, expand_upper};

/// Lower end of every root bracket.
pub const BRACKET_LOW: f64 = 2.0 + 1e-9;
/// First upper end tried; doubled until the sign changes.
pub const BRACKET_HIGH: f64 = 8.0;
const BRACKET_LIMIT: f64 = 1e15;

/// Quantities shared by F0..F3 at one `(lambda, alpha)`; no validation.
#[derive(Debug, Clone, Copy)]
struct Parts {
    alpha: f64,
    lambda: f64,
    /// (1 - alpha)^2
    w2: f64,
    sqrt_disc: f64,
    theta: f64,
    theta_prime: f64,
    delta: f64,
}

impl Parts {
    fn new(lambda: f64, alpha: f64) -> Self {
        let w2 = (1.0 - alpha) * (1.0 - alpha);
        // (2a - l)^2 - 4 (1 - a)^2 factored, exact near lambda = 2
        let disc = (lambda - 2.0) * (lambda - 4.0 * alpha + 2.0);
        let sqrt_disc = disc.sqrt();
        let theta = 0.5 * ((2.0 * alpha - lambda) - sqrt_disc);
        // theta * theta' = (1 - alpha)^2, without the cancellation in
        // ((2a - l) + sqrt disc) / 2
        let theta_prime = w2 / theta;
        let delta = alpha + w2 / (lambda - alpha);
        Self {
            alpha,
            lambda,
            w2,
            sqrt_disc,
            theta,
            theta_prime,
            delta,
        }
    }

    fn d_delta(&self) -> f64 {
        let u = self.lambda - self.alpha;
        -self.w2 / (u * u)
    }

    fn d_sqrt_disc(&self) -> f64 {
        (self.lambda - 2.0 * self.alpha) / self.sqrt_disc
    }

    fn d_theta_prime(&self) -> f64 {
        0.5 * (-1.0 + self.d_sqrt_disc())
    }
}

/// A validated `(alpha, lambda)` with `0 <= alpha < 1`, `lambda > 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaLambda {
    pub alpha: f64,
    pub lambda: f64,
    /// delta_alpha = alpha + (1 - alpha)^2 / (lambda - alpha)
    pub delta: f64,
    /// Delta_alpha = (2 alpha - lambda)^2 - 4 (1 - alpha)^2, positive.
    pub disc: f64,
    /// Attracting fixed point of phi.
    pub theta: f64,
    /// Repelling fixed point of phi, `theta < theta_prime < 0`.
    pub theta_prime: f64,
}

impl AlphaLambda {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(domain("alpha", alpha, "[0, 1)"));
        }
        if !(lambda > 2.0) || !lambda.is_finite() {
            return Err(domain("lambda", lambda, "(2, inf)"));
        }
        let p = Parts::new(lambda, alpha);
        Ok(Self {
            alpha,
            lambda,
            delta: p.delta,
            disc: p.sqrt_disc * p.sqrt_disc,
            theta: p.theta,
            theta_prime: p.theta_prime,
        })
    }

    /// `(1 - alpha)^2`
    pub fn w2(&self) -> f64 {
        (1.0 - self.alpha) * (1.0 - self.alpha)
    }

    /// phi(t) = 2 alpha - lambda - (1 - alpha)^2 / t
    pub fn phi(&self, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Err(domain("t", t, "t != 0"));
        }
        Ok(self.phi_unchecked(t))
    }

    pub(crate) fn phi_unchecked(&self, t: f64) -> f64 {
        2.0 * self.alpha - self.lambda - self.w2() / t
    }
}

/// F0(lambda, alpha) = alpha + (1 - alpha)^2 / (lambda - alpha) - sqrt(Delta).
pub fn f0(lambda: f64, alpha: f64) -> f64 {
    let p = Parts::new(lambda, alpha);
    p.delta - p.sqrt_disc
}

pub fn df0_dlambda(lambda: f64, alpha: f64) -> f64 {
    let p = Parts::new(lambda, alpha);
    p.d_delta() - p.d_sqrt_disc()
}

/// F1(lambda, alpha) = (2 alpha - lambda + delta)(theta' - delta) - 2 (1 - alpha)^2.
pub fn f1(lambda: f64, alpha: f64) -> f64 {
    let p = Parts::new(lambda, alpha);
    (2.0 * alpha - lambda + p.delta) * (p.theta_prime - p.delta) - 2.0 * p.w2
}

/// F2(lambda, alpha) = -1 + alpha + delta - theta'.
pub fn f2(lambda: f64, alpha: f64) -> f64 {
    let p = Parts::new(lambda, alpha);
    -1.0 + alpha + p.delta - p.theta_prime
}

pub fn df2_dlambda(lambda: f64, alpha: f64) -> f64 {
    let p = Parts::new(lambda, alpha);
    p.d_delta() - p.d_theta_prime()
}

/// F3(lambda, alpha) = delta + theta'.
pub fn f3(lambda: f64, alpha: f64) -> f64 {
    let p = Parts::new(lambda, alpha);
    p.delta + p.theta_prime
}

pub fn df3_dlambda(lambda: f64, alpha: f64) -> f64 {
    let p = Parts::new(lambda, alpha);
    p.d_delta() + p.d_theta_prime()
}

/// P_alpha(lambda); tau0(alpha) is one of its positive roots.
pub fn quartic_p_alpha(lambda: f64, alpha: f64) -> f64 {
    let a = alpha;
    let l = lambda;
    let c4 = -1.0;
    let c3 = 6.0 * a;
    let c2 = -8.0 * a * a - 8.0 * a + 4.0;
    let c1 = 4.0 * a * a * a + 12.0 * a * a - 6.0 * a;
    let c0 = -8.0 * a * a * a + 8.0 * a * a - 4.0 * a + 1.0;
    (((c4 * l + c3) * l + c2) * l + c1) * l + c0
}

/// The cubic obtained by squaring `F3 = 0`:
/// `l^3 - 5a l^2 + (4a^2 + 6a - 3) l - a^3 - 2a^2 - 3a + 4 - 1/a`.
///
/// tau1' is a root, but squaring also admits roots of the conjugate branch,
/// so this is a cross-check only.
pub fn cubic_p3(lambda: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(domain("alpha", alpha, "(0, 1)"));
    }
    let a = alpha;
    let c2 = -5.0 * a;
    let c1 = 4.0 * a * a + 6.0 * a - 3.0;
    let c0 = -a * a * a - 2.0 * a * a - 3.0 * a + 4.0 - 1.0 / a;
    Ok(((lambda + c2) * lambda + c1) * lambda + c0)
}

/// Discriminant d(alpha) of the depressed form of the tau1' cubic.
pub fn cubic_discriminant_d(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain("alpha", alpha, "(0, 1)"));
    }
    let a = alpha;
    let poly = (((((-23.0 * a + 200.0) * a - 732.0) * a + 1496.0) * a - 1886.0) * a + 1512.0) * a
        - 756.0;
    Ok(poly + 216.0 / a - 27.0 / (a * a))
}

/// `(alpha*, lambda*) = ((3 - sqrt 2) / 7, (9 + 4 sqrt 2) / 7)`, the point
/// where the interval [tau1, tau1') closes up.
pub fn alpha_star() -> (f64, f64) {
    let s2 = std::f64::consts::SQRT_2;
    ((3.0 - s2) / 7.0, (9.0 + 4.0 * s2) / 7.0)
}

/// `(alpha, lambda)` where tau1' meets tau2:
/// `(1 - 2 sqrt 5 / 5, (-7 + 5 sqrt 5) / (3 sqrt 5 - 5))`.
pub fn corollary_crossover() -> (f64, f64) {
    let s5 = 5f64.sqrt();
    (1.0 - 2.0 * s5 / 5.0, (-7.0 + 5.0 * s5) / (3.0 * s5 - 5.0))
}

/// On the tau1' = tau2 curve, lambda as a function of alpha.
pub fn crossover_lambda(alpha: f64) -> f64 {
    (alpha * alpha + 3.0 * alpha - 2.0) / (-1.0 + 3.0 * alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CurveKind {
    #[serde(rename = "tau0")]
    Tau0,
    #[serde(rename = "tau2")]
    Tau2,
    #[serde(rename = "tau1_prime")]
    Tau1Prime,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Tau0 => "tau0",
            CurveKind::Tau2 => "tau2",
            CurveKind::Tau1Prime => "tau1_prime",
        }
    }

    fn function(self) -> fn(f64, f64) -> f64 {
        match self {
            CurveKind::Tau0 => f0,
            CurveKind::Tau2 => f2,
            CurveKind::Tau1Prime => f3,
        }
    }

    fn derivative(self) -> fn(f64, f64) -> f64 {
        match self {
            CurveKind::Tau0 => df0_dlambda,
            CurveKind::Tau2 => df2_dlambda,
            CurveKind::Tau1Prime => df3_dlambda,
        }
    }
}

fn cache() -> &'static Mutex<HashMap<(CurveKind, i64), f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(CurveKind, i64), f64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized per alpha at 1e-12 granularity. The lock is not held while
/// computing; the computation is deterministic, so racing threads store
/// identical values.
fn memoized(kind: CurveKind, alpha: f64, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
    let key = (kind, (alpha * 1e12).round() as i64);
    if let Some(&v) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(v);
    }
    let v = compute()?;
    cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(key, v);
    Ok(v)
}

fn solve_curve(kind: CurveKind, alpha: f64) -> Result<f64> {
    let f = |l: f64| kind.function()(l, alpha);
    let df = |l: f64| kind.derivative()(l, alpha);
    let upper = expand_upper(f, BRACKET_LOW, BRACKET_HIGH, BRACKET_LIMIT).ok_or(Error::NoBracket {
        what: kind.as_str(),
        upper: BRACKET_LIMIT,
    })?;
    bisect_newton(f, df, BRACKET_LOW, upper).ok_or(Error::NoBracket {
        what: kind.as_str(),
        upper,
    })
}

/// The limit of the A_alpha spectral radii of T_{1,n,n}: the root of F0 in
/// (2, inf), for `0 <= alpha <= 1`.
pub fn tau0(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(domain("alpha", alpha, "[0, 1]"));
    }
    memoized(CurveKind::Tau0, alpha, || solve_curve(CurveKind::Tau0, alpha))
}

/// Root of F2 in (2, inf), for `0 <= alpha < 1/2`. Grows without bound as
/// alpha approaches 1/2.
pub fn tau2(alpha: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&alpha) {
        return Err(domain("alpha", alpha, "[0, 1/2)"));
    }
    memoized(CurveKind::Tau2, alpha, || solve_curve(CurveKind::Tau2, alpha))
}

/// Root of F3 in (2, inf) for `0 <= alpha < alpha*`; `+inf` at alpha = 0.
pub fn tau1_prime(alpha: f64) -> Result<f64> {
    let (a_star, _) = alpha_star();
    if !(0.0..a_star).contains(&alpha) {
        return Err(domain("alpha", alpha, "[0, alpha*)"));
    }
    if alpha == 0.0 {
        return Ok(f64::INFINITY);
    }
    memoized(CurveKind::Tau1Prime, alpha, || {
        solve_curve(CurveKind::Tau1Prime, alpha)
    })
}

/// `(tau1, tau1')` with `tau1 = tau0`; at alpha = 0 this is
/// `(sqrt(2 + sqrt 5), +inf)`.
pub fn tau1_interval(alpha: f64) -> Result<(f64, f64)> {
    let upper = tau1_prime(alpha)?;
    let lower = if alpha == 0.0 {
        (2.0 + 5f64.sqrt()).sqrt()
    } else {
        tau0(alpha)?
    };
    Ok((lower, upper))
}

/// One solved point on a threshold curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdCurvePoint {
    pub alpha: f64,
    pub value: f64,
    pub kind: CurveKind,
    /// `|F(value, alpha)|` for the curve's defining function; 0 at +inf.
    pub residual: f64,
}

pub fn curve_point(kind: CurveKind, alpha: f64) -> Result<ThresholdCurvePoint> {
    let value = match kind {
        CurveKind::Tau0 => tau0(alpha)?,
        CurveKind::Tau2 => tau2(alpha)?,
        CurveKind::Tau1Prime => tau1_prime(alpha)?,
    };
    let residual = if value.is_finite() {
        kind.function()(value, alpha).abs()
    } else {
        0.0
    };
    Ok(ThresholdCurvePoint {
        alpha,
        value,
        kind,
        residual,
    })
}

/// Label of a lambda-range in the per-alpha picture of limit points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SegmentLabel {
    /// No result covers this range.
    #[serde(rename = "unknown")]
    Unknown,
    /// `[tau1, tau1')`, minus any part already in interval-II.
    #[serde(rename = "interval-I")]
    IntervalOne,
    /// `(tau1', tau2)` when tau1' < tau2: open, status unknown.
    #[serde(rename = "gap")]
    Gap,
    /// `[tau2, inf)`.
    #[serde(rename = "interval-II")]
    IntervalTwo,
}

impl SegmentLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SegmentLabel::Unknown => "unknown",
            SegmentLabel::IntervalOne => "interval-I",
            SegmentLabel::Gap => "gap",
            SegmentLabel::IntervalTwo => "interval-II",
        }
    }

    pub fn is_covered(self) -> bool {
        matches!(self, SegmentLabel::IntervalOne | SegmentLabel::IntervalTwo)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub label: SegmentLabel,
    pub lo: f64,
    pub hi: f64,
}

/// tau1' and tau2 closer than this count as the crossover (no gap).
pub const CROSSOVER_TOL: f64 = 1e-9;

/// Everything known about alpha: the curves defined there and a partition
/// of `[2, inf)` into labelled segments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaProfile {
    pub alpha: f64,
    pub tau0: Option<f64>,
    pub tau1: Option<f64>,
    pub tau1_prime: Option<f64>,
    pub tau2: Option<f64>,
    pub segments: Vec<Segment>,
}

impl AlphaProfile {
    /// Smallest lambda with `[lambda, inf)` entirely covered, if any.
    pub fn covered_from(&self) -> Option<f64> {
        let mut start = None;
        for s in self.segments.iter().rev() {
            if !s.label.is_covered() {
                break;
            }
            start = Some(s.lo);
        }
        start
    }

    pub fn has_gap(&self) -> bool {
        self.segments.iter().any(|s| s.label == SegmentLabel::Gap)
    }
}

pub fn alpha_profile(alpha: f64) -> Result<AlphaProfile> {
    let tau0 = Some(tau0(alpha)?);
    let tau2 = tau2(alpha).ok();
    let interval = tau1_interval(alpha).ok();
    let mut segments = Vec::new();
    let mut push = |label, lo: f64, hi: f64| {
        if hi > lo {
            segments.push(Segment { label, lo, hi });
        }
    };
    match (interval, tau2) {
        (Some((t1, t1p)), Some(t2)) => {
            push(SegmentLabel::Unknown, 2.0, t1);
            if t1p >= t2 - CROSSOVER_TOL {
                push(SegmentLabel::IntervalOne, t1, t2);
            } else {
                push(SegmentLabel::IntervalOne, t1, t1p);
                push(SegmentLabel::Gap, t1p, t2);
            }
            push(SegmentLabel::IntervalTwo, t2, f64::INFINITY);
        }
        (_, Some(t2)) => {
            push(SegmentLabel::Unknown, 2.0, t2);
            push(SegmentLabel::IntervalTwo, t2, f64::INFINITY);
        }
        _ => push(SegmentLabel::Unknown, 2.0, f64::INFINITY),
    }
    Ok(AlphaProfile {
        alpha,
        tau0,
        tau1: interval.map(|i| i.0),
        tau1_prime: interval.map(|i| i.1),
        tau2,
        segments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / (1.0 + b.abs())
    }

    #[test]
    fn fixed_point_algebra() {
        for &(a, l) in &[(0.0, 2.01), (0.1, 2.5), (0.3, 7.0), (0.49, 300.0), (0.9, 2.2)] {
            let p = AlphaLambda::new(a, l).unwrap();
            assert!(rel(p.theta * p.theta_prime, p.w2()) < 1e-12);
            assert!(rel(p.theta + p.theta_prime, 2.0 * a - l) < 1e-12);
            assert!(p.theta < p.theta_prime && p.theta_prime < 0.0);
            assert!(p.disc > 0.0);
            assert!(rel(p.phi(p.theta).unwrap(), p.theta) < 1e-12);
            assert!(rel(p.phi(p.theta_prime).unwrap(), p.theta_prime) < 1e-12);
        }
    }

    #[test]
    fn phi_direct_and_zero() {
        let p = AlphaLambda::new(0.0, 3.0).unwrap();
        assert_eq!(p.phi(-1.0).unwrap(), -2.0);
        assert!(p.phi(0.0).is_err());
    }

    #[test]
    fn phi_iteration_converges_to_theta() {
        let p = AlphaLambda::new(0.1, 2.5).unwrap();
        let mut t = p.alpha - p.lambda;
        assert!(t < p.theta);
        for _ in 0..10_000 {
            let next = p.phi(t).unwrap();
            // climbs toward theta from below without overshooting
            assert!(next >= t && next <= p.theta + 1e-15);
            t = next;
        }
        assert!((t - p.theta).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(AlphaLambda::new(1.0, 3.0).is_err());
        assert!(AlphaLambda::new(-0.1, 3.0).is_err());
        assert!(AlphaLambda::new(0.1, 2.0).is_err());
        assert!(AlphaLambda::new(0.1, f64::NAN).is_err());
    }

    #[test]
    fn f0_roots_and_signs() {
        assert!(f0((2.0 + 5f64.sqrt()).sqrt(), 0.0).abs() < 1e-14);
        assert!(f0(3.0, 1.0).abs() < 1e-15);
        assert!(f0(2.5, 0.1) < 0.0);
        assert!(f0(2.0 + 1e-9, 0.3) > 0.0);
    }

    #[test]
    fn f2_limits() {
        let a: f64 = 0.25;
        let near_two = f2(2.0 + 1e-12, a);
        assert!((near_two - (a + (1.0 - a).powi(2) / (2.0 - a))).abs() < 1e-5);
        assert!((f2(1e9, a) - (-1.0 + 2.0 * a)).abs() < 1e-8);
        let t2 = tau2(0.25).unwrap();
        assert!((t2 - 2.795171086).abs() < 1e-8);
        assert!(f2(t2, 0.25).abs() < 1e-13);
    }

    #[test]
    fn f3_facts() {
        assert!(f3(tau1_prime(0.01).unwrap(), 0.01).abs() < 1e-13);
        assert!((f3(1e10, 0.2) - 0.2).abs() < 1e-9);
        assert!(f3(tau0(0.1).unwrap(), 0.1) < 0.0);
    }

    #[test]
    fn f1_factorizes() {
        for i in 0..100 {
            let l = 2.01 + 0.45 * i as f64;
            let a = 0.0049 * i as f64;
            let lhs = f1(l, a);
            assert!((lhs + f0(l, a) * f3(l, a)).abs() <= 1e-10 * (1.0 + lhs.abs()));
        }
        assert!(f1(2.2, 0.01) < 0.0);
        let t = tau0(0.15).unwrap();
        assert!(f1(t, 0.15).abs() < 1e-13);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        for &(l, a) in &[(2.3, 0.0), (3.1, 0.2), (10.0, 0.45)] {
            for (f, df) in [
                (f0 as fn(f64, f64) -> f64, df0_dlambda as fn(f64, f64) -> f64),
                (f2, df2_dlambda),
                (f3, df3_dlambda),
            ] {
                let fd = (f(l + h, a) - f(l - h, a)) / (2.0 * h);
                assert!((fd - df(l, a)).abs() < 1e-6, "l={l} a={a}");
            }
        }
    }

    #[test]
    fn tau0_values() {
        assert!((tau0(0.0).unwrap() - 2.058171027).abs() < 1e-9);
        assert!((tau0(0.5).unwrap() - 2.191487884).abs() < 1e-9);
        assert!((tau0(0.9999).unwrap() - 2.999700025).abs() < 1e-9);
        assert!((tau0(1.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(tau0(1.1).is_err());
    }

    #[test]
    fn tau2_values_and_domain() {
        let closed = {
            let c = (108.0 + 12.0 * 69f64.sqrt()).cbrt();
            c / 6.0 + 2.0 / c + 1.0
        };
        assert!((tau2(0.0).unwrap() - closed).abs() < 1e-12);
        assert!((tau2(0.4).unwrap() - 4.271267076).abs() < 1e-8);
        assert!((tau2(0.499).unwrap() - 251.7502495).abs() / 251.75 < 1e-8);
        assert!(tau2(0.5).is_err());
    }

    #[test]
    fn tau1_interval_values() {
        let (a, b) = tau1_interval(1e-3).unwrap();
        assert!((a - 2.058283826).abs() < 1e-8 && (b - 10.08827222).abs() < 1e-7);
        let (a, b) = tau1_interval(0.1).unwrap();
        assert!((a - 2.071110742).abs() < 1e-8 && (b - 2.479706668).abs() < 1e-8);
        let (a, b) = tau1_interval(0.0).unwrap();
        assert!((a - 2.058171027).abs() < 1e-9 && b == f64::INFINITY);
        assert!(tau1_interval(alpha_star().0).is_err());
    }

    #[test]
    fn constants() {
        let (a, l) = alpha_star();
        assert!((a - 0.2265409196609).abs() < 1e-12);
        assert!((l - 2.0938363213560).abs() < 1e-12);
        assert!(f0(l, a).abs() < 1e-9 && f3(l, a).abs() < 1e-9);

        let (a, l) = corollary_crossover();
        assert!((a - 0.105572809).abs() < 1e-9);
        assert!((l - 2.4472135954).abs() < 1e-10);
        assert!((crossover_lambda(a) - l).abs() < 1e-12);
        assert!(f2(l, a).abs() < 1e-12 && f3(l, a).abs() < 1e-12);
    }

    #[test]
    fn discriminant_values() {
        let g = |a: f64| 216.0 / a - 27.0 / (a * a);
        assert_eq!(g(0.125), 0.0);
        assert!((cubic_discriminant_d(0.25).unwrap() + 176823.0 / 4096.0).abs() < 1e-12);
        for i in 1..=100 {
            let a = 0.25 * i as f64 / 101.0;
            assert!(cubic_discriminant_d(a).unwrap() < 0.0);
        }
        assert!(cubic_discriminant_d(0.0).is_err());
    }

    #[test]
    fn quartic_and_cubic_cross_checks() {
        for l in [2.1, 3.0, 5.5] {
            assert!((quartic_p_alpha(l, 0.0) - (-l.powi(4) + 4.0 * l * l + 1.0)).abs() < 1e-12);
        }
        assert!(quartic_p_alpha((2.0 + 5f64.sqrt()).sqrt(), 0.0).abs() < 1e-10);
        for a in [0.1, 0.3, 0.5] {
            assert!(quartic_p_alpha(tau0(a).unwrap(), a).abs() < 1e-9);
        }
        for a in [1e-3, 0.01, 0.1, 0.22] {
            let t = tau1_prime(a).unwrap();
            let scale = 1.0 / a + t.powi(3);
            assert!(cubic_p3(t, a).unwrap().abs() < 1e-12 * scale, "alpha {a}");
        }
    }

    #[test]
    fn residuals_are_tiny() {
        for a in [0.0, 0.01, 0.2, 0.45] {
            for kind in [CurveKind::Tau0, CurveKind::Tau2] {
                assert!(curve_point(kind, a).unwrap().residual <= 1e-10);
            }
        }
        assert!(curve_point(CurveKind::Tau1Prime, 0.1).unwrap().residual <= 1e-10);
    }

    #[test]
    fn tau0_increasing() {
        let mut prev = 0.0;
        for i in 0..=50 {
            let t = tau0(i as f64 / 50.0).unwrap();
            assert!(t > prev);
            prev = t;
        }
    }

    #[test]
    fn profiles() {
        let p = alpha_profile(0.0).unwrap();
        assert!((p.covered_from().unwrap() - 2.058171027).abs() < 1e-9);
        assert!(!p.has_gap());

        let p = alpha_profile(0.22).unwrap();
        assert!(p.has_gap());
        let gap = p.segments.iter().find(|s| s.label == SegmentLabel::Gap).unwrap();
        assert!((gap.lo - 2.103408681).abs() < 1e-8);
        assert!((gap.hi - 2.692120306).abs() < 1e-8);

        let p = alpha_profile(0.3).unwrap();
        assert_eq!(p.tau1, None);
        assert_eq!(p.segments.len(), 2);

        let p = alpha_profile(0.7).unwrap();
        assert_eq!(p.segments.len(), 1);
        assert_eq!(p.segments[0].label, SegmentLabel::Unknown);
        assert_eq!(p.covered_from(), None);
    }
}
