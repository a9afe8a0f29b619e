//! Spanning trees, fundamental cutset matrices, and everything built on
//! them: a Hamiltonicity test by chord-column selection, the lattice view of
//! the cutset matrix, and a tour construction that searches for the cheapest
//! feasible column selection.
//!
//! For a connected graph and a spanning tree, each branch defines the
//! minimal cut separating the two components left by its removal; a chord
//! crosses that cut exactly when its fundamental cycle uses the branch. Any
//! Hamiltonian circuit crosses every one of these cuts a positive, even
//! number of times, contributes at least one chord per cut, and has exactly
//! `p` edges; conversely a connected selection meeting those counts is a
//! Hamiltonian circuit. That equivalence drives both the decision procedure
//! and the tour search below.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::sublist::{edges_form_walk, edges_to_order};
use crate::tour::{Tour, WalkMode};
use crate::util::UnionFind;

/// Default cap on search nodes for the subset searches.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Rows are packed into one machine word.
const MAX_ROWS: usize = 64;

/// An undirected edge with an optional display label.
#[derive(Debug, Clone, Serialize)]
pub struct GraphEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub label: Option<String>,
}

/// An undirected graph given as an edge list. Self-loops are rejected;
/// parallel edges are allowed and kept apart by their edge index.
#[derive(Debug, Clone, Serialize)]
pub struct SimpleGraph {
    p: usize,
    edges: Vec<GraphEdge>,
}

impl SimpleGraph {
    pub fn new(p: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges =
            pairs.iter().map(|&(u, v)| GraphEdge { u, v, weight: 1.0, label: None }).collect();
        SimpleGraph::with_edges(p, edges)
    }

    pub fn with_edges(p: usize, mut edges: Vec<GraphEdge>) -> Result<Self> {
        if p < 2 {
            return Err(Error::BadParameter(format!("need p >= 2 vertices, got {p}")));
        }
        for e in &mut edges {
            for x in [e.u, e.v] {
                if x < 1 || x > p {
                    return Err(Error::IndexOutOfRange { index: x, p });
                }
            }
            if e.u == e.v {
                return Err(Error::BadParameter(format!("self-loop at vertex {}", e.u)));
            }
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        Ok(SimpleGraph { p, edges })
    }

    /// Complete-graph view of an instance; edges in lexicographic order.
    pub fn complete_from(inst: &Instance) -> SimpleGraph {
        let edges = inst
            .edges()
            .map(|(i, j, w)| GraphEdge { u: i, v: j, weight: w, label: None })
            .collect();
        SimpleGraph { p: inst.p(), edges }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn edge(&self, ix: usize) -> &GraphEdge {
        &self.edges[ix]
    }

    /// Label of an edge for reports: its given name, else `(u,v)`.
    pub fn edge_name(&self, ix: usize) -> String {
        let e = &self.edges[ix];
        e.label.clone().unwrap_or_else(|| format!("({},{})", e.u, e.v))
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.p);
        for e in &self.edges {
            uf.union(e.u - 1, e.v - 1);
        }
        uf.components() == 1
    }

    /// Parses `GRAPH p q` followed by `q` lines `u v [weight] [label]`.
    /// `#` comments and blank lines are skipped.
    pub fn parse_str(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let (ln0, header) =
            lines.first().ok_or(Error::Parse { line: 0, msg: "empty graph file".into() })?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 || !head[0].eq_ignore_ascii_case("GRAPH") {
            return Err(Error::Parse { line: *ln0, msg: "expected `GRAPH p q`".into() });
        }
        let p: usize = head[1]
            .parse()
            .map_err(|_| Error::Parse { line: *ln0, msg: "bad vertex count".into() })?;
        let q: usize = head[2]
            .parse()
            .map_err(|_| Error::Parse { line: *ln0, msg: "bad edge count".into() })?;
        let mut edges = Vec::with_capacity(q);
        for k in 0..q {
            let (ln, l) = lines
                .get(1 + k)
                .ok_or(Error::Parse { line: *ln0, msg: format!("expected {q} edge lines") })?;
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() < 2 {
                return Err(Error::Parse {
                    line: *ln,
                    msg: "expected `u v [weight] [label]`".into(),
                });
            }
            let u: usize = toks[0]
                .parse()
                .map_err(|_| Error::Parse { line: *ln, msg: "bad endpoint".into() })?;
            let v: usize = toks[1]
                .parse()
                .map_err(|_| Error::Parse { line: *ln, msg: "bad endpoint".into() })?;
            let mut weight = 1.0;
            let mut label = None;
            for t in &toks[2..] {
                if let Ok(w) = t.parse::<f64>() {
                    weight = w;
                } else {
                    label = Some(t.to_string());
                }
            }
            edges.push(GraphEdge { u, v, weight, label });
        }
        SimpleGraph::with_edges(p, edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        SimpleGraph::parse_str(&std::fs::read_to_string(path)?)
    }
}

/// A spanning tree named by edge indices of its host graph.
#[derive(Debug, Clone, Serialize)]
pub struct SpanningTree {
    ids: Vec<usize>,
}

impl SpanningTree {
    pub fn new(g: &SimpleGraph, ids: Vec<usize>) -> Result<Self> {
        if ids.len() != g.p() - 1 {
            return Err(Error::NotASpanningTree);
        }
        let mut uf = UnionFind::new(g.p());
        for &ix in &ids {
            if ix >= g.q() {
                return Err(Error::NotASpanningTree);
            }
            let e = g.edge(ix);
            if !uf.union(e.u - 1, e.v - 1) {
                return Err(Error::NotASpanningTree);
            }
        }
        Ok(SpanningTree { ids })
    }

    /// Resolves vertex pairs to edge indices, in the order given. Parallel
    /// edges resolve to the first unused index with those endpoints.
    pub fn from_pairs(g: &SimpleGraph, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut used = vec![false; g.q()];
        let mut ids = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let (u, v) = (a.min(b), a.max(b));
            let ix = g
                .edges()
                .iter()
                .enumerate()
                .position(|(ix, e)| !used[ix] && e.u == u && e.v == v)
                .ok_or(Error::NotASpanningTree)?;
            used[ix] = true;
            ids.push(ix);
        }
        SpanningTree::new(g, ids)
    }

    /// The star at vertex 1, the default tree for complete instances.
    pub fn star(g: &SimpleGraph) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (2..=g.p()).map(|v| (1, v)).collect();
        SpanningTree::from_pairs(g, &pairs)
    }

    /// Parses a tree file of `p-1` lines `u v` against its host graph.
    pub fn parse_str(g: &SimpleGraph, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let l = line.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Parse { line: n + 1, msg: "expected `u v`".into() });
            }
            let u = toks[0]
                .parse()
                .map_err(|_| Error::Parse { line: n + 1, msg: "bad endpoint".into() })?;
            let v = toks[1]
                .parse()
                .map_err(|_| Error::Parse { line: n + 1, msg: "bad endpoint".into() })?;
            pairs.push((u, v));
        }
        SpanningTree::from_pairs(g, &pairs)
    }

    pub fn load(g: &SimpleGraph, path: impl AsRef<Path>) -> Result<Self> {
        SpanningTree::parse_str(g, &std::fs::read_to_string(path)?)
    }

    pub fn branch_ids(&self) -> &[usize] {
        &self.ids
    }
}

/// Fundamental cutset matrix `[C_c : I]`: one row per branch, one column per
/// chord (the identity over branches is implicit). Row `r` marks the chords
/// crossing the cut defined by deleting branch `r` from the tree.
#[derive(Debug, Clone, Serialize)]
pub struct FCutsetMatrix {
    p: usize,
    chord_ids: Vec<usize>,
    branch_ids: Vec<usize>,
    /// `masks[c]` holds the rows of chord column `c`, bit `r` per branch row.
    masks: Vec<u64>,
}

pub fn build_fcutset_matrix(g: &SimpleGraph, t: &SpanningTree) -> Result<FCutsetMatrix> {
    if !g.is_connected() {
        return Err(Error::BadParameter("graph is not connected".into()));
    }
    let p = g.p();
    if p - 1 > MAX_ROWS {
        return Err(Error::TooLarge { p, max: MAX_ROWS + 1 });
    }
    let in_tree = {
        let mut v = vec![false; g.q()];
        for &ix in t.branch_ids() {
            v[ix] = true;
        }
        v
    };
    let chord_ids: Vec<usize> = (0..g.q()).filter(|&ix| !in_tree[ix]).collect();
    let branch_ids = t.branch_ids().to_vec();
    let mut masks = vec![0u64; chord_ids.len()];
    for (r, &br) in branch_ids.iter().enumerate() {
        // sides of the cut: components of the tree minus this branch
        let mut uf = UnionFind::new(p);
        for &ix in &branch_ids {
            if ix != br {
                let e = g.edge(ix);
                uf.union(e.u - 1, e.v - 1);
            }
        }
        let anchor = g.edge(br).u - 1;
        for (c, &cid) in chord_ids.iter().enumerate() {
            let e = g.edge(cid);
            let su = uf.connected(e.u - 1, anchor);
            let sv = uf.connected(e.v - 1, anchor);
            if su != sv {
                masks[c] |= 1 << r;
            }
        }
    }
    Ok(FCutsetMatrix { p, chord_ids, branch_ids, masks })
}

impl FCutsetMatrix {
    pub fn rows(&self) -> usize {
        self.p - 1
    }

    pub fn chord_ids(&self) -> &[usize] {
        &self.chord_ids
    }

    pub fn branch_ids(&self) -> &[usize] {
        &self.branch_ids
    }

    /// Rows crossed by chord column `c`, packed as bits.
    pub fn chord_rows(&self, c: usize) -> u64 {
        self.masks[c]
    }

    pub fn entry(&self, row: usize, chord_col: usize) -> bool {
        self.masks[chord_col] & (1 << row) != 0
    }

    /// The displayed binary matrix including the identity part, row major.
    pub fn full_matrix(&self) -> Vec<Vec<u8>> {
        let rows = self.rows();
        let nc = self.chord_ids.len();
        (0..rows)
            .map(|r| {
                let mut row = Vec::with_capacity(nc + rows);
                for c in 0..nc {
                    row.push(self.entry(r, c) as u8);
                }
                for b in 0..rows {
                    row.push((b == r) as u8);
                }
                row
            })
            .collect()
    }

    fn all_rows_mask(&self) -> u64 {
        if self.rows() == MAX_ROWS {
            u64::MAX
        } else {
            (1u64 << self.rows()) - 1
        }
    }
}

/// The lattice view of a cutset matrix: one vertex per 1-entry, a vertical
/// path through each column's entries, and horizontal edges joining
/// consecutive entries of each row (identity column included).
#[derive(Debug, Clone, Serialize)]
pub struct LatticeGraph {
    /// `(row, col)` per vertex; chord columns first, then identity columns.
    pub vertices: Vec<(usize, usize)>,
    pub vertical: Vec<(usize, usize)>,
    pub horizontal: Vec<(usize, usize)>,
}

// the grid is walked in both row-major and column-major order
#[allow(clippy::needless_range_loop)]
pub fn build_lattice_graph(m: &FCutsetMatrix) -> LatticeGraph {
    let rows = m.rows();
    let ncols = m.chord_ids().len() + rows;
    let mut vertices = Vec::new();
    let mut index = vec![vec![None; ncols]; rows];
    for r in 0..rows {
        for c in 0..ncols {
            let one =
                if c < m.chord_ids().len() { m.entry(r, c) } else { c - m.chord_ids().len() == r };
            if one {
                index[r][c] = Some(vertices.len());
                vertices.push((r, c));
            }
        }
    }
    let mut vertical = Vec::new();
    for c in 0..ncols {
        let mut prev: Option<usize> = None;
        for r in 0..rows {
            if let Some(v) = index[r][c] {
                if let Some(pv) = prev {
                    vertical.push((pv, v));
                }
                prev = Some(v);
            }
        }
    }
    let mut horizontal = Vec::new();
    for r in 0..rows {
        let mut prev: Option<usize> = None;
        for c in 0..ncols {
            if let Some(v) = index[r][c] {
                if let Some(pv) = prev {
                    horizontal.push((pv, v));
                }
                prev = Some(v);
            }
        }
    }
    LatticeGraph { vertices, vertical, horizontal }
}

/// A chord-column selection with the branches it induces: a branch stays
/// exactly when its row meets the selected chords an odd number of times.
#[derive(Debug, Clone, Serialize)]
pub struct ChordSelection {
    /// Edge indices of the selected chords.
    pub chords: Vec<usize>,
    /// Edge indices of the induced branches.
    pub branches: Vec<usize>,
}

impl ChordSelection {
    pub fn total(&self) -> usize {
        self.chords.len() + self.branches.len()
    }
}

/// Outcome of the chord-subset Hamiltonicity search.
#[derive(Debug, Clone, Serialize)]
pub enum HamiltonOutcome {
    Found { selection: ChordSelection, circuit: Vec<usize>, nodes: u64 },
    NotHamiltonian { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

fn selection_edges(
    g: &SimpleGraph,
    m: &FCutsetMatrix,
    chords: &[usize],
    parity: u64,
) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = chords
        .iter()
        .map(|&c| {
            let e = g.edge(m.chord_ids()[c]);
            (e.u, e.v)
        })
        .collect();
    for r in 0..m.rows() {
        if parity & (1 << r) != 0 {
            let e = g.edge(m.branch_ids()[r]);
            pairs.push((e.u, e.v));
        }
    }
    pairs
}

/// Decides Hamiltonicity by scanning chord subsets in increasing
/// cardinality, lexicographic within each size. A subset is accepted when
/// every cut is covered, the chord count plus induced branches equals `p`,
/// and the selected edges form a single degree-two cycle; exhausting all
/// subsets proves no Hamiltonian circuit exists.
pub fn decide_hamiltonian(
    g: &SimpleGraph,
    t: &SpanningTree,
    budget: u64,
) -> Result<HamiltonOutcome> {
    decide_hamiltonian_requiring(g, t, &[], budget)
}

/// Same search restricted to supersets of `required` (edge indices of
/// chords), which makes impossibility arguments for specific edge pairs
/// reproducible.
pub fn decide_hamiltonian_requiring(
    g: &SimpleGraph,
    t: &SpanningTree,
    required: &[usize],
    budget: u64,
) -> Result<HamiltonOutcome> {
    let m = build_fcutset_matrix(g, t)?;
    let p = g.p();
    let nc = m.chord_ids().len();
    let full = m.all_rows_mask();

    let req_cols: Vec<usize> = required
        .iter()
        .map(|&eid| {
            m.chord_ids()
                .iter()
                .position(|&c| c == eid)
                .ok_or_else(|| Error::BadParameter(format!("edge {eid} is not a chord")))
        })
        .collect::<Result<_>>()?;
    let free_cols: Vec<usize> = (0..nc).filter(|c| !req_cols.contains(c)).collect();

    let mut nodes = 0u64;
    let req_mask_cov: u64 = req_cols.iter().map(|&c| m.chord_rows(c)).fold(0, |a, b| a | b);
    let req_mask_xor: u64 = req_cols.iter().map(|&c| m.chord_rows(c)).fold(0, |a, b| a ^ b);

    let max_extra = p.saturating_sub(req_cols.len()).min(free_cols.len());
    for extra in 0..=max_extra {
        let mut combo: Vec<usize> = (0..extra).collect();
        loop {
            if nodes >= budget {
                return Ok(HamiltonOutcome::BudgetExhausted { nodes });
            }
            nodes += 1;
            let mut cov = req_mask_cov;
            let mut xor = req_mask_xor;
            for &ci in &combo {
                let rows = m.chord_rows(free_cols[ci]);
                cov |= rows;
                xor ^= rows;
            }
            let total = req_cols.len() + extra + xor.count_ones() as usize;
            if cov == full && total == p {
                let chords: Vec<usize> =
                    req_cols.iter().copied().chain(combo.iter().map(|&ci| free_cols[ci])).collect();
                let pairs = selection_edges(g, &m, &chords, xor);
                if edges_form_walk(&pairs, p, WalkMode::Circuit) {
                    let circuit = edges_to_order(&pairs, p, WalkMode::Circuit)?;
                    let selection = ChordSelection {
                        chords: chords.iter().map(|&c| m.chord_ids()[c]).collect(),
                        branches: (0..m.rows())
                            .filter(|&r| xor & (1 << r) != 0)
                            .map(|r| m.branch_ids()[r])
                            .collect(),
                    };
                    return Ok(HamiltonOutcome::Found { selection, circuit, nodes });
                }
            }
            if !advance_combination(&mut combo, free_cols.len()) {
                break;
            }
        }
    }
    Ok(HamiltonOutcome::NotHamiltonian { nodes })
}

/// Next lexicographic `k`-combination of `0..n`; false when exhausted.
fn advance_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Checks a user-supplied selection against the full circuit conditions:
/// every cut met an even number of times and at least twice, total count
/// `p`, and independently that the chosen edges really form a Hamiltonian
/// circuit.
pub fn verify_selection(g: &SimpleGraph, t: &SpanningTree, sel: &ChordSelection) -> Result<bool> {
    let m = build_fcutset_matrix(g, t)?;
    let chord_cols: Vec<usize> = match sel
        .chords
        .iter()
        .map(|eid| m.chord_ids().iter().position(|c| c == eid))
        .collect::<Option<Vec<_>>>()
    {
        Some(v) => v,
        None => return Ok(false),
    };
    let branch_rows: Vec<usize> = match sel
        .branches
        .iter()
        .map(|eid| m.branch_ids().iter().position(|b| b == eid))
        .collect::<Option<Vec<_>>>()
    {
        Some(v) => v,
        None => return Ok(false),
    };
    if sel.total() != g.p() {
        return Ok(false);
    }
    for r in 0..m.rows() {
        let chords_here = chord_cols.iter().filter(|&&c| m.entry(r, c)).count();
        let count = chords_here + branch_rows.contains(&r) as usize;
        if count < 2 || !count.is_multiple_of(2) {
            return Ok(false);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &c in &chord_cols {
        let e = g.edge(m.chord_ids()[c]);
        pairs.push((e.u, e.v));
    }
    for &r in &branch_rows {
        let e = g.edge(m.branch_ids()[r]);
        pairs.push((e.u, e.v));
    }
    Ok(edges_form_walk(&pairs, g.p(), WalkMode::Circuit))
}

/// Tour construction on a complete instance via cutset columns: a greedy
/// pass grows a connected, cycle-free set of chord columns by cheapest
/// chord weight, then a bounded branch-and-bound over chord subsets looks
/// for the cheapest feasible selection (chord weights plus induced branch
/// weights). The best circuit found within the node budget is returned.
pub fn cutset_tsp_greedy(inst: &Instance, tree: &[(usize, usize)]) -> Result<Tour> {
    cutset_tsp_with_budget(inst, tree, DEFAULT_NODE_BUDGET)
}

pub fn cutset_tsp_with_budget(
    inst: &Instance,
    tree: &[(usize, usize)],
    budget: u64,
) -> Result<Tour> {
    let g = SimpleGraph::complete_from(inst);
    let t = SpanningTree::from_pairs(&g, tree)?;
    let m = build_fcutset_matrix(&g, &t)?;
    let p = g.p();
    let full = m.all_rows_mask();
    let nc = m.chord_ids().len();

    let chord_weight = |c: usize| g.edge(m.chord_ids()[c]).weight;
    let branch_weight = |r: usize| g.edge(m.branch_ids()[r]).weight;
    let parity_branch_cost = |xor: u64| -> f64 {
        (0..m.rows()).filter(|&r| xor & (1 << r) != 0).map(branch_weight).sum()
    };
    let chord_pair = |c: usize| {
        let e = g.edge(m.chord_ids()[c]);
        (e.u, e.v)
    };

    // chord columns by (weight, pair)
    let mut order: Vec<usize> = (0..nc).collect();
    order.sort_by(|&a, &b| {
        chord_weight(a).total_cmp(&chord_weight(b)).then(chord_pair(a).cmp(&chord_pair(b)))
    });

    // greedy pass: cheapest column first, then cheapest column sharing
    // exactly one covered row, which keeps the lattice selection a tree
    let greedy = || -> Option<(Vec<usize>, u64, f64)> {
        let mut sel: Vec<usize> = Vec::new();
        let mut cov = 0u64;
        let mut xor = 0u64;
        let mut used = vec![false; nc];
        while cov != full {
            let next = order.iter().copied().find(|&c| {
                if used[c] {
                    return false;
                }
                if sel.is_empty() {
                    return true;
                }
                (m.chord_rows(c) & cov).count_ones() == 1
            })?;
            used[next] = true;
            sel.push(next);
            cov |= m.chord_rows(next);
            xor ^= m.chord_rows(next);
        }
        if sel.len() + xor.count_ones() as usize != p {
            return None;
        }
        let pairs = selection_edges(&g, &m, &sel, xor);
        if !edges_form_walk(&pairs, p, WalkMode::Circuit) {
            return None;
        }
        let cost = sel.iter().map(|&c| chord_weight(c)).sum::<f64>() + parity_branch_cost(xor);
        Some((sel, xor, cost))
    };

    let mut best: Option<(Vec<usize>, u64, f64)> = greedy();

    // branch-and-bound for the cheapest feasible selection; chord weights
    // alone already bound any completion from below
    let suffix_cov: Vec<u64> = {
        let mut v = vec![0u64; nc + 1];
        for i in (0..nc).rev() {
            v[i] = v[i + 1] | m.chord_rows(order[i]);
        }
        v
    };
    struct Frame<'a> {
        m: &'a FCutsetMatrix,
        g: &'a SimpleGraph,
        order: &'a [usize],
        suffix_cov: &'a [u64],
        full: u64,
        p: usize,
        budget: u64,
        nodes: u64,
    }
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        f: &mut Frame<'_>,
        i: usize,
        sel: &mut Vec<usize>,
        cov: u64,
        xor: u64,
        chordw: f64,
        best: &mut Option<(Vec<usize>, u64, f64)>,
        chord_weight: &dyn Fn(usize) -> f64,
        parity_branch_cost: &dyn Fn(u64) -> f64,
    ) {
        if f.nodes >= f.budget {
            return;
        }
        f.nodes += 1;
        if let Some((_, _, bw)) = best {
            if chordw >= *bw {
                return;
            }
        }
        if cov == f.full && sel.len() + xor.count_ones() as usize == f.p {
            let pairs = selection_edges(f.g, f.m, sel, xor);
            if edges_form_walk(&pairs, f.p, WalkMode::Circuit) {
                let cost = chordw + parity_branch_cost(xor);
                if best.as_ref().is_none_or(|(_, _, bw)| cost < *bw) {
                    *best = Some((sel.clone(), xor, cost));
                }
            }
        }
        if i >= f.order.len() || sel.len() >= f.p {
            return;
        }
        if cov | f.suffix_cov[i] != f.full {
            return;
        }
        let c = f.order[i];
        let rows = f.m.chord_rows(c);
        sel.push(c);
        dfs(
            f,
            i + 1,
            sel,
            cov | rows,
            xor ^ rows,
            chordw + chord_weight(c),
            best,
            chord_weight,
            parity_branch_cost,
        );
        sel.pop();
        dfs(f, i + 1, sel, cov, xor, chordw, best, chord_weight, parity_branch_cost);
    }
    let mut frame =
        Frame { m: &m, g: &g, order: &order, suffix_cov: &suffix_cov, full, p, budget, nodes: 0 };
    let mut sel = Vec::new();
    dfs(&mut frame, 0, &mut sel, 0, 0, 0.0, &mut best, &chord_weight, &parity_branch_cost);

    match best {
        Some((sel, xor, _)) => {
            let pairs = selection_edges(&g, &m, &sel, xor);
            let order = edges_to_order(&pairs, p, WalkMode::Circuit)?;
            Ok(Tour::new(inst, order)?.canonicalized())
        }
        None => Err(Error::GreedyStuck { nodes: frame.nodes }),
    }
}
