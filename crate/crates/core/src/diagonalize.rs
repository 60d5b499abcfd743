//! Bottom-up congruence diagonalization of `M + x I` on a weighted tree,
//! inertia counting, and a bisection spectral radius built on it.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::tree::{RootedTree, WeightedTreeMatrix};

/// Pivots with `|d| <= ZERO_TOL` take the zero branch.
pub const ZERO_TOL: f64 = 1e-12;

/// Iteration cap for the spectral radius bisection.
pub const MAX_BISECTIONS: u32 = 200;

/// Diagonal congruent to `M + x I`, with inertia counts.
///
/// `d` is indexed by vertex id; [`DiagResult::in_order`] gives the
/// bottom-up view.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagResult {
    pub d: Vec<f64>,
    #[serde(skip)]
    pub removed_edges: Vec<(usize, usize)>,
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl DiagResult {
    pub fn in_order(&self, tree: &RootedTree) -> Vec<f64> {
        tree.order().iter().map(|&v| self.d[v]).collect()
    }

    /// `{"d": [...], "n_pos": .., "n_neg": .., "n_zero": ..}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("DiagResult serializes")
    }
}

/// Runs the diagonalization of `M + x I`.
///
/// The input is not modified; edge removals from the zero branch are
/// tracked on scratch state and reported in `removed_edges` as
/// `(vertex, parent)` pairs.
pub fn diagonalize(m: &WeightedTreeMatrix, x: f64) -> DiagResult {
    let tree = m.tree();
    let w = m.edge_weights();
    let mut d: Vec<f64> = m.diag().iter().map(|&v| v + x).collect();
    let mut cut = vec![false; tree.len()];
    let mut removed_edges = Vec::new();

    for &v in tree.order() {
        let mut live = tree.children(v).iter().copied().filter(|&c| !cut[c]).peekable();
        if live.peek().is_none() {
            continue;
        }
        match tree
            .children(v)
            .iter()
            .copied()
            .find(|&c| !cut[c] && d[c].abs() <= ZERO_TOL)
        {
            Some(j) => {
                d[v] = -(w[j] * w[j]) / 2.0;
                d[j] = 2.0;
                if let Some(p) = tree.parent(v) {
                    cut[v] = true;
                    removed_edges.push((v, p));
                }
            }
            None => {
                let s: f64 = live.map(|c| w[c] * w[c] / d[c]).sum();
                d[v] -= s;
            }
        }
    }

    let (n_pos, n_neg, n_zero) = inertia(&d);
    DiagResult {
        d,
        removed_edges,
        n_pos,
        n_neg,
        n_zero,
    }
}

fn inertia(d: &[f64]) -> (usize, usize, usize) {
    d.iter().fold((0, 0, 0), |(p, n, z), &v| {
        if v.abs() <= ZERO_TOL {
            (p, n, z + 1)
        } else if v > 0.0 {
            (p + 1, n, z)
        } else {
            (p, n + 1, z)
        }
    })
}

/// Number of eigenvalues of `M` strictly greater than `c`.
pub fn count_eigenvalues_greater(m: &WeightedTreeMatrix, c: f64) -> usize {
    diagonalize(m, -c).n_pos
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralRadiusResult {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: u32,
    /// False when the iteration cap was hit before the bracket reached the
    /// requested width.
    pub converged: bool,
}

/// Lower bound on the A_alpha spectral radius of a connected graph with
/// maximum degree `max_degree`.
pub fn a_alpha_lower_bound(alpha: f64, max_degree: usize) -> f64 {
    let delta = max_degree as f64;
    let a = alpha * (delta + 1.0);
    let rad = a * a + 4.0 * delta * (1.0 - 2.0 * alpha);
    0.5 * (a + rad.max(0.0).sqrt())
}

/// Largest eigenvalue of `M` by bisection on the inertia count.
///
/// For A_alpha matrices the starting bracket is `[lower bound, max degree]`,
/// otherwise `[-R, R]` with `R` the largest absolute row sum. The loop stops
/// once the bracket is no wider than `tol` or can no longer be split in
/// double precision.
pub fn spectral_radius(m: &WeightedTreeMatrix, tol: f64) -> Result<SpectralRadiusResult> {
    if !(tol > 0.0) {
        return Err(domain("tol", tol, "(0, inf)"));
    }
    let (mut lo, mut hi) = match m.alpha() {
        Some(alpha) if m.len() >= 2 => {
            let delta = m.tree().max_degree();
            let hi = delta as f64;
            (a_alpha_lower_bound(alpha, delta).min(hi), hi)
        }
        _ => {
            let r = m.max_abs_row_sum();
            (-r, r)
        }
    };

    let mut iterations = 0;
    let mut converged = hi - lo <= tol;
    while !converged && iterations < MAX_BISECTIONS {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            converged = true;
            break;
        }
        iterations += 1;
        if count_eigenvalues_greater(m, mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
        converged = hi - lo <= tol;
    }

    Ok(SpectralRadiusResult {
        value: lo + 0.5 * (hi - lo),
        lower: lo,
        upper: hi,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense_spectrum_oracle;
    use crate::tree::{a_alpha_weights, make_caterpillar, random_tree, CaterpillarSpec};
    use rand::{Rng, SeedableRng};

    fn path(n: usize) -> RootedTree {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        RootedTree::from_edges(n, &edges, 0).unwrap()
    }

    #[test]
    fn p2_at_zero_takes_the_zero_branch() {
        let m = a_alpha_weights(&path(2), 0.0).unwrap();
        let r = diagonalize(&m, 0.0);
        let leaf = 1 - m.tree().root();
        assert_eq!(r.d[leaf], 2.0);
        assert_eq!(r.d[m.tree().root()], -0.5);
        assert_eq!((r.n_pos, r.n_neg, r.n_zero), (1, 1, 0));
        assert!(r.removed_edges.is_empty());
    }

    #[test]
    fn p3_at_zero_has_one_of_each() {
        for root in 0..3 {
            let t = RootedTree::from_edges(3, &[(0, 1), (1, 2)], root).unwrap();
            let m = a_alpha_weights(&t, 0.0).unwrap();
            let r = diagonalize(&m, 0.0);
            assert_eq!((r.n_pos, r.n_neg, r.n_zero), (1, 1, 1), "root {root}");
        }
    }

    #[test]
    fn zero_branch_removes_the_parent_edge() {
        // rooted at an end: the middle vertex sees a zero leaf and cuts its
        // edge to the root
        let t = RootedTree::from_edges(3, &[(0, 1), (1, 2)], 0).unwrap();
        let m = a_alpha_weights(&t, 0.0).unwrap();
        let r = diagonalize(&m, 0.0);
        assert_eq!(r.removed_edges, vec![(1, 0)]);
        assert_eq!(r.d[0], 0.0);
        // input untouched
        assert_eq!(m.diag(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn counts_on_small_paths() {
        let p2 = a_alpha_weights(&path(2), 0.0).unwrap();
        assert_eq!(count_eigenvalues_greater(&p2, 0.0), 1);
        let p3 = a_alpha_weights(&path(3), 0.0).unwrap();
        assert_eq!(count_eigenvalues_greater(&p3, 1.5), 0);
        assert_eq!(count_eigenvalues_greater(&p3, 1.4), 1);
        assert_eq!(count_eigenvalues_greater(&p3, -1.5), 3);
    }

    #[test]
    fn random_counts_match_dense_oracle() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let t = random_tree(10, &mut rng);
            let m = a_alpha_weights(&t, 0.0).unwrap();
            let c = rng.gen_range(-3.0..3.0);
            let eig = dense_spectrum_oracle(&m).unwrap();
            let expected = eig.iter().filter(|&&e| e > c).count();
            assert_eq!(count_eigenvalues_greater(&m, c), expected);
        }
    }

    #[test]
    fn radius_of_p2_and_star() {
        let p2 = a_alpha_weights(&path(2), 0.0).unwrap();
        let r = spectral_radius(&p2, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.lower <= r.value && r.value <= r.upper);
        assert!(r.upper - r.lower <= 1e-12);

        let star = make_caterpillar(&CaterpillarSpec::new(vec![4]).unwrap());
        let m = a_alpha_weights(&star, 0.0).unwrap();
        let r = spectral_radius(&m, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn radius_without_alpha_uses_row_sums() {
        let t = path(3);
        let m = WeightedTreeMatrix::new(t, vec![1.0, -2.0, 0.5], vec![0.3, 0.7, 0.0]).unwrap();
        let r = spectral_radius(&m, 1e-13).unwrap();
        let eig = dense_spectrum_oracle(&m).unwrap();
        assert!((r.value - eig[2]).abs() < 1e-12);
    }

    #[test]
    fn radius_rejects_bad_tol() {
        let m = a_alpha_weights(&path(2), 0.0).unwrap();
        assert!(spectral_radius(&m, 0.0).is_err());
        assert!(spectral_radius(&m, -1.0).is_err());
        assert!(spectral_radius(&m, f64::NAN).is_err());
    }

    #[test]
    fn alpha_one_radius_is_max_degree() {
        // middle spine vertex: 3 leaves + 2 spine neighbours
        let t = make_caterpillar(&CaterpillarSpec::new(vec![2, 3, 1]).unwrap());
        let m = a_alpha_weights(&t, 1.0).unwrap();
        let r = spectral_radius(&m, 1e-12).unwrap();
        assert!((r.value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn diag_json_shape() {
        let m = a_alpha_weights(&path(2), 0.0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&diagonalize(&m, 0.0).to_json()).unwrap();
        assert_eq!(v["n_pos"], 1);
        assert_eq!(v["n_neg"], 1);
        assert_eq!(v["n_zero"], 0);
        assert_eq!(v["d"].as_array().unwrap().len(), 2);
    }
}
