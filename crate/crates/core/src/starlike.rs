//! The starlike trees T_{1,n,n} without building them.
//!
//! Rooting T_{1,n,n} at its degree-3 vertex, the diagonalization of
//! `A_alpha - lambda I` down each arm is the orbit of `phi` started at the
//! arm's leaf, so the whole pivot list is two numbers per arm length.

use crate::diagonalize::a_alpha_lower_bound;
use crate::error::{domain, Result};

/// Pivots of `A_alpha(T_{1,n,n}) - lambda I`: `(Z_1..Z_n, xi)`, where `Z_j`
/// is the pivot of the arm vertex at distance `n - j + 1` from the root
/// (both arms share it) and `xi` is the root's pivot. `None` if the
/// recurrence hits a zero pivot.
pub fn starlike_pivots(n: usize, alpha: f64, lambda: f64) -> Option<(Vec<f64>, f64)> {
    let w2 = (1.0 - alpha) * (1.0 - alpha);
    let mut z = Vec::with_capacity(n);
    let mut t = alpha - lambda;
    z.push(t);
    for _ in 1..n {
        if t == 0.0 {
            return None;
        }
        t = 2.0 * alpha - lambda - w2 / t;
        z.push(t);
    }
    let z1 = alpha - lambda;
    if t == 0.0 || z1 == 0.0 {
        return None;
    }
    let xi = 3.0 * alpha - lambda - w2 / z1 - 2.0 * w2 / t;
    Some((z, xi))
}

/// True iff `lambda` exceeds the spectral radius of `A_alpha(T_{1,n,n})`,
/// i.e. `A_alpha - lambda I` is negative definite.
pub fn above_radius(n: usize, alpha: f64, lambda: f64) -> bool {
    let w2 = (1.0 - alpha) * (1.0 - alpha);
    let z1 = alpha - lambda;
    if z1 >= 0.0 {
        return false;
    }
    let mut t = z1;
    for _ in 1..n {
        t = 2.0 * alpha - lambda - w2 / t;
        if t >= 0.0 {
            return false;
        }
    }
    3.0 * alpha - lambda - w2 / z1 - 2.0 * w2 / t < 0.0
}

/// Spectral radius of `A_alpha(T_{1,n,n})` by bisection on [`above_radius`],
/// down to double precision. O(n) per step.
pub fn starlike_radius(n: usize, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("n", 0.0, "n >= 1"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(domain("alpha", alpha, "[0, 1]"));
    }
    let mut lo = a_alpha_lower_bound(alpha, 3).min(3.0) - 1e-9;
    let mut hi = 3.0;
    loop {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if above_radius(n, alpha, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
