//! Ordered weighted adjacency lists and edge sublists.
//!
//! The ordered list ([`Owal`]) holds every edge of the instance sorted by
//! nondecreasing weight. A sublist of `p-1` edges is a Hamiltonian-path
//! candidate and one of `p` edges a circuit candidate; [`EdgeSubList::is_valid`]
//! runs the degree-and-connectivity feasibility check for either mode.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tour::WalkMode;
use crate::util::UnionFind;

/// A set of distinct edges with its total weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeSubList {
    edges: Vec<(usize, usize)>,
    weight: f64,
}

impl EdgeSubList {
    /// Builds a sublist from vertex pairs, normalizing each to `(min, max)`
    /// and pricing it on `inst`. Self-loops, out-of-range vertices and
    /// duplicate pairs are rejected.
    pub fn new(inst: &Instance, pairs: &[(usize, usize)]) -> Result<Self> {
        let p = inst.p();
        let mut edges = Vec::with_capacity(pairs.len());
        let mut weight = 0.0;
        for &(a, b) in pairs {
            for v in [a, b] {
                if v < 1 || v > p {
                    return Err(Error::IndexOutOfRange { index: v, p });
                }
            }
            if a == b {
                return Err(Error::BadParameter(format!("self-loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if edges.contains(&e) {
                return Err(Error::BadParameter(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            weight += inst.weight(e.0, e.1);
            edges.push(e);
        }
        Ok(EdgeSubList { edges, weight })
    }

    pub(crate) fn from_parts(edges: Vec<(usize, usize)>, weight: f64) -> Self {
        EdgeSubList { edges, weight }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Feasibility check for an instance on `p` vertices.
    ///
    /// Path mode: `p-1` edges covering all vertices, exactly two of degree
    /// one, the rest of degree two, connected. Circuit mode: `p` edges, every
    /// vertex of degree two, connected. Malformed sublists simply fail.
    pub fn is_valid(&self, p: usize, mode: WalkMode) -> bool {
        edges_form_walk(&self.edges, p, mode)
    }

    /// Produces a traversal realizing the sublist. Paths start at the smaller
    /// endpoint; circuits start at vertex 1 and move toward the smaller
    /// neighbor.
    pub fn to_order(&self, p: usize, mode: WalkMode) -> Result<Vec<usize>> {
        edges_to_order(&self.edges, p, mode)
    }
}

/// Degree-and-connectivity test on a raw edge set.
pub(crate) fn edges_form_walk(edges: &[(usize, usize)], p: usize, mode: WalkMode) -> bool {
    let need = match mode {
        WalkMode::Path => p - 1,
        WalkMode::Circuit => p,
    };
    if edges.len() != need {
        return false;
    }
    let mut degree = vec![0usize; p];
    let mut uf = UnionFind::new(p);
    let mut merges = 0;
    for &(a, b) in edges {
        if a == b || a < 1 || b < 1 || a > p || b > p {
            return false;
        }
        degree[a - 1] += 1;
        degree[b - 1] += 1;
        if uf.union(a - 1, b - 1) {
            merges += 1;
        }
    }
    // connected over all p vertices <=> p-1 successful merges
    if merges != p - 1 {
        return false;
    }
    match mode {
        WalkMode::Path => {
            let ones = degree.iter().filter(|&&d| d == 1).count();
            let twos = degree.iter().filter(|&&d| d == 2).count();
            ones == 2 && twos == p - 2
        }
        WalkMode::Circuit => degree.iter().all(|&d| d == 2),
    }
}

pub(crate) fn edges_to_order(
    edges: &[(usize, usize)],
    p: usize,
    mode: WalkMode,
) -> Result<Vec<usize>> {
    if !edges_form_walk(edges, p, mode) {
        return Err(Error::InfeasibleSublist);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); p + 1];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for n in adj.iter_mut() {
        n.sort_unstable();
    }
    let start = match mode {
        WalkMode::Path => (1..=p).find(|&v| adj[v].len() == 1).expect("path endpoint"),
        WalkMode::Circuit => 1,
    };
    let mut order = Vec::with_capacity(p);
    let mut prev = 0usize;
    let mut cur = start;
    for _ in 0..p {
        order.push(cur);
        let next = adj[cur].iter().copied().find(|&v| v != prev);
        prev = cur;
        match next {
            Some(v) => cur = v,
            None => break,
        }
    }
    Ok(order)
}

/// Ordered weighted adjacency list: all edges sorted by nondecreasing weight,
/// equal weights broken by lexicographic vertex pair.
#[derive(Debug, Clone, Serialize)]
pub struct Owal {
    entries: Vec<(f64, (usize, usize))>,
    p: usize,
}

pub fn build_owal(inst: &Instance) -> Owal {
    let mut entries: Vec<(f64, (usize, usize))> =
        inst.edges().map(|(i, j, w)| (w, (i, j))).collect();
    entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Owal { entries, p: inst.p() }
}

impl Owal {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn entries(&self) -> &[(f64, (usize, usize))] {
        &self.entries
    }

    /// Materializes the sublist picking the given 0-based entry indices.
    pub fn sublist_at(&self, indices: &[usize]) -> EdgeSubList {
        let mut edges = Vec::with_capacity(indices.len());
        let mut weight = 0.0;
        for &ix in indices {
            let (w, e) = self.entries[ix];
            weight += w;
            edges.push(e);
        }
        EdgeSubList::from_parts(edges, weight)
    }
}
