//! Bracketed root finding: bisection down to a narrow bracket, then a few
//! safeguarded Newton steps.

/// Bisection stops once the bracket is this narrow.
pub const BRACKET_WIDTH: f64 = 1e-13;

/// Newton polish steps after bisection.
pub const NEWTON_STEPS: usize = 3;

/// Root of `f` in `[lo, hi]`, given that `f(lo)` and `f(hi)` differ in sign.
///
/// Returns `None` when there is no sign change. Newton steps are only
/// accepted if they stay inside the final bracket and do not increase `|f|`.
pub fn bisect_newton<F, D>(f: F, df: D, mut lo: f64, mut hi: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return None;
    }

    while hi - lo > BRACKET_WIDTH {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    let mut x = lo + 0.5 * (hi - lo);
    let mut fx = f(x);
    for _ in 0..NEWTON_STEPS {
        let slope = df(x);
        if fx == 0.0 || slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = x - fx / slope;
        if !(lo..=hi).contains(&next) {
            break;
        }
        let f_next = f(next);
        if f_next.abs() > fx.abs() {
            break;
        }
        x = next;
        fx = f_next;
    }
    Some(x)
}

/// Doubles `upper` (starting at `start`) until `f(upper)` has the opposite
/// sign of `f(lower)`, giving up past `limit`.
pub fn expand_upper<F: Fn(f64) -> f64>(f: F, lower: f64, start: f64, limit: f64) -> Option<f64> {
    let s = f(lower).signum();
    let mut upper = start;
    while upper <= limit {
        let fu = f(upper);
        if fu.is_nan() {
            return None;
        }
        if fu.signum() != s {
            return Some(upper);
        }
        upper *= 2.0;
    }
    None
}

/// Plain bisection on a monotone predicate: returns the final bracket
/// `(lo, hi)` with `pred(lo) == false` and `pred(hi) == true`, narrowed until
/// `hi - lo <= rel_width * hi` or no further split is possible.
pub fn bisect_predicate<P: Fn(f64) -> bool>(pred: P, mut lo: f64, mut hi: f64, rel_width: f64) -> (f64, f64) {
    for _ in 0..2000 {
        if hi - lo <= rel_width * hi.abs() {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bisect_newton(|x| x * x - 2.0, |x| 2.0 * x, 0.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn no_sign_change() {
        assert!(bisect_newton(|x| x * x + 1.0, |x| 2.0 * x, -1.0, 1.0).is_none());
    }

    #[test]
    fn decreasing_function() {
        let r = bisect_newton(|x| 3.0 - x, |_| -1.0, 0.0, 10.0).unwrap();
        assert!((r - 3.0).abs() < 1e-14);
    }

    #[test]
    fn expand_finds_far_root() {
        let f = |x: f64| 1000.0 - x;
        let u = expand_upper(f, 2.0, 8.0, 1e6).unwrap();
        assert_eq!(u, 1024.0);
        assert!(expand_upper(|_| 1.0, 2.0, 8.0, 1e3).is_none());
    }

    #[test]
    fn predicate_bisection_resolves_tiny_roots() {
        let (lo, hi) = bisect_predicate(|x| x >= 3e-17, 0.0, 2.0, 1e-13);
        assert!(lo < 3e-17 && 3e-17 <= hi);
        assert!(hi - lo <= 1e-13 * hi);
    }
}
