//! Row-minima bounds for grading heuristic tours.
//!
//! For each vertex the incident edges are sorted by weight and grouped into
//! arrays of equal weight. The sum of the per-row minima bounds any circuit
//! from below; charging every vertex the edge it leaves along a given tour
//! bounds the distance of that tour from the optimum from above.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tour::Tour;

/// One group of equally weighted neighbors in a sorted row.
#[derive(Debug, Clone, Serialize)]
pub struct WeightGroup {
    pub weight: f64,
    pub neighbors: Vec<usize>,
}

/// Per-vertex incident edges in nondecreasing weight, partitioned by
/// distinct weight value. The first group of row `i` holds the minima.
#[derive(Debug, Clone, Serialize)]
pub struct SortedWeightArrays {
    p: usize,
    rows: Vec<Vec<WeightGroup>>,
}

pub fn build_swa(inst: &Instance) -> SortedWeightArrays {
    let p = inst.p();
    let mut rows = Vec::with_capacity(p);
    for i in 1..=p {
        let mut entries: Vec<(f64, usize)> =
            (1..=p).filter(|&j| j != i).map(|j| (inst.weight(i, j), j)).collect();
        entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut groups: Vec<WeightGroup> = Vec::new();
        for (w, j) in entries {
            match groups.last_mut() {
                Some(g) if g.weight == w => g.neighbors.push(j),
                _ => groups.push(WeightGroup { weight: w, neighbors: vec![j] }),
            }
        }
        rows.push(groups);
    }
    SortedWeightArrays { p, rows }
}

impl SortedWeightArrays {
    pub fn p(&self) -> usize {
        self.p
    }

    /// Groups of row `i` (1-based vertex label).
    pub fn row(&self, i: usize) -> &[WeightGroup] {
        &self.rows[i - 1]
    }

    /// Smallest incident weight of row `i`.
    pub fn row_min(&self, i: usize) -> f64 {
        self.rows[i - 1][0].weight
    }

    fn edge_weight(&self, i: usize, j: usize) -> f64 {
        self.rows[i - 1]
            .iter()
            .find(|g| g.neighbors.contains(&j))
            .map(|g| g.weight)
            .expect("complete instance row")
    }

    /// Sum of the per-row minima: no circuit can weigh less.
    pub fn first_array_lower_bound(&self) -> f64 {
        (1..=self.p).map(|i| self.row_min(i)).sum()
    }

    /// Upper bound on how far `tour` can sit above the optimum.
    ///
    /// Walking the tour in its given direction, each vertex is charged the
    /// edge it leaves minus its row minimum; the charges sum to the tour
    /// weight minus [`first_array_lower_bound`], so the bound is independent
    /// of the traversal direction.
    pub fn gap_bound(&self, tour: &Tour) -> Result<f64> {
        if tour.order().len() != self.p {
            return Err(Error::TourInstanceMismatch { tour_p: tour.order().len(), inst_p: self.p });
        }
        let order = tour.order();
        let mut gap = 0.0;
        for k in 0..self.p {
            let v = order[k];
            let s = order[(k + 1) % self.p];
            gap += self.edge_weight(v, s) - self.row_min(v);
        }
        Ok(gap)
    }

    /// Union of every row's first array, as normalized edges.
    pub fn first_array_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for i in 1..=self.p {
            for &j in &self.rows[i - 1][0].neighbors {
                let e = (i.min(j), i.max(j));
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether the first-array subgraph contains a Hamiltonian circuit
    /// (backtracking; intended for small instances).
    ///
    /// This is a reported diagnostic only: a Hamiltonian first-array
    /// subgraph does not force the optimum down to the lower bound, because
    /// a circuit edge may be a row minimum for only one of its endpoints.
    pub fn first_array_is_hamiltonian(&self) -> bool {
        let edges = self.first_array_edges();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.p + 1];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        if (1..=self.p).any(|v| adj[v].len() < 2) {
            return false;
        }
        fn dfs(adj: &[Vec<usize>], visited: &mut [bool], cur: usize, left: usize) -> bool {
            if left == 0 {
                return adj[cur].contains(&1);
            }
            for &n in &adj[cur] {
                if !visited[n] {
                    visited[n] = true;
                    if dfs(adj, visited, n, left - 1) {
                        return true;
                    }
                    visited[n] = false;
                }
            }
            false
        }
        let mut visited = vec![false; self.p + 1];
        visited[1] = true;
        dfs(&adj, &mut visited, 1, self.p - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::gen_random_instance;
    use crate::instance::InstanceKind;

    fn k6() -> Instance {
        Instance::from_rows(
            "k6",
            &[
                vec![0.0, 2.0, 3.0, 4.0, 1.0, 1.0],
                vec![2.0, 0.0, 1.0, 3.0, 2.0, 3.0],
                vec![3.0, 1.0, 0.0, 4.0, 3.0, 4.0],
                vec![4.0, 3.0, 4.0, 0.0, 4.0, 3.0],
                vec![1.0, 2.0, 3.0, 4.0, 0.0, 2.0],
                vec![1.0, 3.0, 4.0, 3.0, 2.0, 0.0],
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn k6_first_arrays() {
        let swa = build_swa(&k6());
        assert_eq!(swa.row(1)[0].weight, 1.0);
        assert_eq!(swa.row(1)[0].neighbors, vec![5, 6]);
        assert_eq!(swa.row(4)[0].weight, 3.0);
        assert_eq!(swa.row(4)[0].neighbors, vec![2, 6]);
    }

    #[test]
    fn unit_weights_single_array_per_row() {
        let inst = Instance::from_rows(
            "unit4",
            &[
                vec![0.0, 1.0, 1.0, 1.0],
                vec![1.0, 0.0, 1.0, 1.0],
                vec![1.0, 1.0, 0.0, 1.0],
                vec![1.0, 1.0, 1.0, 0.0],
            ],
            None,
        )
        .unwrap();
        let swa = build_swa(&inst);
        for i in 1..=4 {
            assert_eq!(swa.row(i).len(), 1);
            assert_eq!(swa.row(i)[0].neighbors.len(), 3);
        }
        assert_eq!(swa.first_array_lower_bound(), 4.0);
        let tour = Tour::new(&inst, vec![1, 3, 2, 4]).unwrap();
        assert_eq!(swa.gap_bound(&tour).unwrap(), 0.0);
    }

    #[test]
    fn rows_regroup_to_sorted_neighbor_lists() {
        let inst = gen_random_instance(9, 7, InstanceKind::Uniform, 15.0).unwrap();
        let swa = build_swa(&inst);
        for i in 1..=7 {
            let mut flat: Vec<(f64, usize)> = Vec::new();
            for g in swa.row(i) {
                for &n in &g.neighbors {
                    flat.push((g.weight, n));
                }
            }
            assert_eq!(flat.len(), 6);
            for w in flat.windows(2) {
                assert!(w[0].0 <= w[1].0);
            }
            let mut expect: Vec<(f64, usize)> =
                (1..=7).filter(|&j| j != i).map(|j| (inst.weight(i, j), j)).collect();
            expect.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            assert_eq!(flat, expect);
        }
    }

    #[test]
    fn k6_lower_bound_and_gap() {
        let inst = k6();
        let swa = build_swa(&inst);
        assert_eq!(swa.first_array_lower_bound(), 8.0);
        let tour = Tour::new(&inst, vec![1, 6, 5, 2, 3, 4]).unwrap();
        assert_eq!(tour.weight(), 14.0);
        assert_eq!(swa.gap_bound(&tour).unwrap(), 6.0);
        // direction independent
        let rev = Tour::new(&inst, vec![1, 4, 3, 2, 5, 6]).unwrap();
        assert_eq!(swa.gap_bound(&rev).unwrap(), 6.0);
    }

    #[test]
    fn gap_is_zero_for_all_min_tours() {
        // every tour edge is a row minimum for both endpoints
        let inst = Instance::from_rows(
            "ring",
            &[
                vec![0.0, 1.0, 5.0, 1.0],
                vec![1.0, 0.0, 1.0, 5.0],
                vec![5.0, 1.0, 0.0, 1.0],
                vec![1.0, 5.0, 1.0, 0.0],
            ],
            None,
        )
        .unwrap();
        let swa = build_swa(&inst);
        let tour = Tour::new(&inst, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(swa.gap_bound(&tour).unwrap(), 0.0);
    }

    #[test]
    fn gap_rejects_mismatched_tour() {
        let inst = k6();
        let other = gen_random_instance(2, 5, InstanceKind::Uniform, 9.0).unwrap();
        let tour = Tour::new(&other, vec![1, 2, 3, 4, 5]).unwrap();
        let swa = build_swa(&inst);
        assert!(matches!(swa.gap_bound(&tour), Err(Error::TourInstanceMismatch { .. })));
    }

    #[test]
    fn first_array_subgraph_diagnostic() {
        // hamiltonian first-array subgraph with optimum strictly above the bound
        let inst = Instance::from_rows(
            "gap4",
            &[
                vec![0.0, 2.0, 3.0, 2.0],
                vec![2.0, 0.0, 2.0, 1.0],
                vec![3.0, 2.0, 0.0, 2.0],
                vec![2.0, 1.0, 2.0, 0.0],
            ],
            None,
        )
        .unwrap();
        let swa = build_swa(&inst);
        assert!(swa.first_array_is_hamiltonian());
        assert_eq!(swa.first_array_lower_bound(), 6.0);
        // all three circuits weigh 8
        let t = Tour::new(&inst, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(t.weight(), 8.0);
    }
}
