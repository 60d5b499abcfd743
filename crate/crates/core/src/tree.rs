//! Rooted trees and their A_alpha weightings.
//!
//! Vertices are 0-based internally. Anything printed for humans (edge lists,
//! compact caterpillar notation) is 1-based.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A tree with parent links and a bottom-up processing order.
///
/// Every vertex appears in `order` after all of its children, so a single
/// forward scan of `order` sees leaves first and the root last.
#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    order: Vec<usize>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl RootedTree {
    /// Builds a tree from parent links and an explicit bottom-up order.
    pub fn from_parents(parent: Vec<Option<usize>>, order: Vec<usize>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidTree("empty vertex set".into()));
        }
        if order.len() != n {
            return Err(Error::InvalidTree(format!(
                "order has {} entries for {} vertices",
                order.len(),
                n
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::InvalidTree(format!(
                    "order is not a permutation (entry {v})"
                )));
            }
            position[v] = i;
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(Error::InvalidTree("more than one root".into()))
                }
                None => root = Some(v),
                Some(p) if p >= n || p == v => {
                    return Err(Error::InvalidTree(format!("bad parent {p} for vertex {v}")))
                }
                // Positions strictly increase along parent links, which rules
                // out cycles and forces every chain to end at the root.
                Some(p) if position[v] >= position[p] => {
                    return Err(Error::InvalidTree(format!(
                        "vertex {v} is not ordered before its parent {p}"
                    )))
                }
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::InvalidTree("no root".into()))?;
        Ok(Self {
            parent,
            order,
            children,
            root,
        })
    }

    /// Builds a tree from parent links, deriving a bottom-up order
    /// (reverse breadth-first from the root).
    pub fn from_parent_links(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for (v, p) in parent.iter().enumerate() {
            match *p {
                Some(p) if p < n => children[p].push(v),
                Some(p) => {
                    return Err(Error::InvalidTree(format!("bad parent {p} for vertex {v}")))
                }
                None => roots.push(v),
            }
        }
        if roots.len() != 1 {
            return Err(Error::InvalidTree(format!("{} roots", roots.len())));
        }
        let mut bfs = Vec::with_capacity(n);
        bfs.push(roots[0]);
        let mut head = 0;
        while head < bfs.len() {
            let v = bfs[head];
            head += 1;
            bfs.extend_from_slice(&children[v]);
            if bfs.len() > n {
                return Err(Error::InvalidTree("parent links contain a cycle".into()));
            }
        }
        if bfs.len() != n {
            return Err(Error::InvalidTree("parent links are not connected".into()));
        }
        bfs.reverse();
        Self::from_parents(parent, bfs)
    }

    /// Roots an undirected edge list (0-based) at `root`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        if n == 0 || root >= n {
            return Err(Error::InvalidTree(format!("root {root} out of range for n = {n}")));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidTree(format!("bad edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidTree("edge list is not connected".into()));
        }
        Self::from_parent_links(parent)
    }

    /// Parses the `u v` per line edge-list format (1-based). Blank lines and
    /// lines starting with `#` are skipped. The tree is rooted at vertex 1.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let mut next = || -> Result<usize> {
                let tok = it.next().ok_or_else(|| Error::Parse {
                    line: i + 1,
                    msg: "expected two vertex ids".into(),
                })?;
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("not a vertex id: {tok:?}"),
                })?;
                if v == 0 {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: "vertex ids are 1-based".into(),
                    });
                }
                Ok(v - 1)
            };
            let (u, v) = (next()?, next()?);
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "trailing tokens".into(),
                });
            }
            n = n.max(u + 1).max(v + 1);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(Error::InvalidTree("no edges".into()));
        }
        Self::from_edges(n, &edges, 0)
    }

    /// Renders the tree as `parent child` lines, 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (child, parent) in self.edges() {
            out.push_str(&format!("{} {}\n", parent + 1, child + 1));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Bottom-up order: every vertex after all of its children.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as `(child, parent)` pairs in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Checks the bottom-up property with one scan of `order`.
    pub fn is_bottom_up(&self) -> bool {
        let mut done = vec![false; self.len()];
        for &v in &self.order {
            if self.children[v].iter().any(|&c| !done[c]) {
                return false;
            }
            done[v] = true;
        }
        true
    }

    /// Same tree with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        if perm.len() != n {
            return Err(Error::InvalidTree("permutation has the wrong length".into()));
        }
        let mut parent = vec![None; n];
        for (v, p) in self.parent.iter().enumerate() {
            parent[perm[v]] = p.map(|p| perm[p]);
        }
        let order = self.order.iter().map(|&v| perm[v]).collect();
        Self::from_parents(parent, order)
    }
}

/// Pendant counts `[r_1, ..., r_k]` of a caterpillar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct CaterpillarSpec {
    r: Vec<u32>,
}

impl CaterpillarSpec {
    pub fn new(r: Vec<u32>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::InvalidTree("caterpillar needs k >= 1".into()));
        }
        Ok(Self { r })
    }

    pub fn counts(&self) -> &[u32] {
        &self.r
    }

    pub fn k(&self) -> usize {
        self.r.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.r.len() + self.r.iter().map(|&x| x as usize).sum::<usize>()
    }
}

impl TryFrom<Vec<u32>> for CaterpillarSpec {
    type Error = Error;

    fn try_from(r: Vec<u32>) -> Result<Self> {
        Self::new(r)
    }
}

impl From<CaterpillarSpec> for Vec<u32> {
    fn from(spec: CaterpillarSpec) -> Self {
        spec.r
    }
}

/// Compact `[r_1, r_2, ..., r_k]` notation.
impl fmt::Display for CaterpillarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.r.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Builds the caterpillar `[r_1, ..., r_k]`.
///
/// Layout: spine vertex `v_i` has index `i - 1` and `v_k` is the root; the
/// pendant leaves follow, grouped by spine vertex. The bottom-up order lists
/// all leaves and then the spine from `v_1` up to `v_k`, so the spine entries
/// of a diagonalization are `d[0..k]`.
pub fn make_caterpillar(spec: &CaterpillarSpec) -> RootedTree {
    let k = spec.k();
    let n = spec.vertex_count();
    let mut parent = Vec::with_capacity(n);
    parent.extend((0..k).map(|i| (i + 1 < k).then_some(i + 1)));
    for (i, &r) in spec.counts().iter().enumerate() {
        parent.extend(std::iter::repeat_n(Some(i), r as usize));
    }
    let order = (k..n).chain(0..k).collect();
    RootedTree::from_parents(parent, order).expect("caterpillar layout is a valid tree")
}

/// Reads the pendant counts back from a tree laid out by [`make_caterpillar`]
/// with spine length `k`. Returns `None` if the tree does not have that shape.
pub fn caterpillar_counts(tree: &RootedTree, k: usize) -> Option<CaterpillarSpec> {
    if k == 0 || k > tree.len() || tree.root() != k - 1 {
        return None;
    }
    let mut r = vec![0u32; k];
    for i in 0..k {
        if i + 1 < k && tree.parent(i) != Some(i + 1) {
            return None;
        }
        for &c in tree.children(i) {
            if c >= k {
                if !tree.is_leaf(c) {
                    return None;
                }
                r[i] += 1;
            }
        }
    }
    CaterpillarSpec::new(r).ok()
}

/// The starlike tree T_{1,n,n}: a root with one pendant vertex and two
/// pendant paths of `n` vertices each (2n + 2 vertices).
///
/// Root is vertex 0, the single pendant leaf is 1, the first path occupies
/// `2..2+n` and the second `2+n..2+2n`, each listed outward from the root.
pub fn make_starlike_1nn(n: usize) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::InvalidTree("T_{1,n,n} needs n >= 1".into()));
    }
    let size = 2 * n + 2;
    let mut parent = vec![None; size];
    parent[1] = Some(0);
    for start in [2, 2 + n] {
        parent[start] = Some(0);
        for v in start + 1..start + n {
            parent[v] = Some(v - 1);
        }
    }
    let mut order = Vec::with_capacity(size);
    for start in [2, 2 + n] {
        order.extend((start..start + n).rev());
    }
    order.push(1);
    order.push(0);
    RootedTree::from_parents(parent, order)
}

/// Random recursive tree on `n` vertices (each new vertex attaches to a
/// uniform earlier one), randomly relabelled so that the root and shape are
/// not tied to vertex ids.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RootedTree {
    assert!(n >= 1, "random_tree needs n >= 1");
    let parent: Vec<Option<usize>> = (0..n)
        .map(|v| (v > 0).then(|| rng.gen_range(0..v)))
        .collect();
    let order = (0..n).rev().collect();
    let tree = RootedTree::from_parents(parent, order).expect("attachment tree is valid");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    tree.relabel(&perm).expect("permutation is valid")
}

/// A symmetric matrix whose off-diagonal pattern is a tree.
///
/// Edge weights live on the child endpoint: `edge_w[v]` is the entry
/// `m[v][parent(v)]`. The root's slot is unused and kept at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTreeMatrix {
    tree: RootedTree,
    diag: Vec<f64>,
    edge_w: Vec<f64>,
    alpha: Option<f64>,
}

impl WeightedTreeMatrix {
    pub fn new(tree: RootedTree, diag: Vec<f64>, edge_w: Vec<f64>) -> Result<Self> {
        let n = tree.len();
        if diag.len() != n || edge_w.len() != n {
            return Err(Error::InvalidTree(format!(
                "weights have lengths {}/{} for {} vertices",
                diag.len(),
                edge_w.len(),
                n
            )));
        }
        let mut edge_w = edge_w;
        edge_w[tree.root()] = 0.0;
        Ok(Self {
            tree,
            diag,
            edge_w,
            alpha: None,
        })
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.edge_w
    }

    /// The alpha this matrix was built from, if it is an A_alpha matrix.
    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.len();
        let mut a = vec![0.0; n * n];
        for v in 0..n {
            a[v * n + v] = self.diag[v];
        }
        for (c, p) in self.tree.edges() {
            a[c * n + p] = self.edge_w[c];
            a[p * n + c] = self.edge_w[c];
        }
        a
    }

    /// Largest absolute row sum (an upper bound on every |eigenvalue|).
    pub fn max_abs_row_sum(&self) -> f64 {
        let mut rows: Vec<f64> = self.diag.iter().map(|d| d.abs()).collect();
        for (c, p) in self.tree.edges() {
            rows[c] += self.edge_w[c].abs();
            rows[p] += self.edge_w[c].abs();
        }
        rows.into_iter().fold(0.0, f64::max)
    }
}

/// `A_alpha(T) = alpha * D + (1 - alpha) * A` as a weighted tree matrix.
pub fn a_alpha_weights(tree: &RootedTree, alpha: f64) -> Result<WeightedTreeMatrix> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(domain("alpha", alpha, "[0, 1]"));
    }
    let diag = (0..tree.len())
        .map(|v| alpha * tree.degree(v) as f64)
        .collect();
    let edge_w = (0..tree.len())
        .map(|v| if tree.parent(v).is_some() { 1.0 - alpha } else { 0.0 })
        .collect();
    Ok(WeightedTreeMatrix {
        tree: tree.clone(),
        diag,
        edge_w,
        alpha: Some(alpha),
    })
}
