//! Exact solvers over the ordered weighted adjacency list, plus the
//! independent permutation oracle used to referee them.
//!
//! [`enumerate_sublists_by_weight`] streams all `C(m, k)` index sets of the
//! sorted edge list in nondecreasing total weight without materializing
//! them. [`owal_exact`] feeds sublists of size `p-1` (paths) or `p`
//! (circuits) through the feasibility check; the first feasible sublist is
//! optimal because no cheaper candidate remains.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::sublist::{build_owal, EdgeSubList, Owal};
use crate::tour::{HamPath, Tour, WalkMode};
use crate::util::next_permutation;

/// Default cap on candidates examined by [`owal_exact`].
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 10_000_000;

/// Largest `p` accepted by [`brute_force`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Largest `p` accepted by [`max_triangular_relabeling`].
pub const RELABEL_LIMIT: usize = 9;

/// Either kind of optimal walk.
#[derive(Debug, Clone, Serialize)]
pub enum Solution {
    Path(HamPath),
    Circuit(Tour),
}

impl Solution {
    pub fn order(&self) -> &[usize] {
        match self {
            Solution::Path(p) => p.order(),
            Solution::Circuit(t) => t.order(),
        }
    }

    pub fn weight(&self) -> f64 {
        match self {
            Solution::Path(p) => p.weight(),
            Solution::Circuit(t) => t.weight(),
        }
    }
}

/// A solve outcome with the work done to reach it.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub solution: Solution,
    pub weight: f64,
    pub candidates_checked: u64,
}

#[derive(Debug)]
struct Candidate {
    weight: f64,
    indices: Vec<u32>,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.weight == other.weight && self.indices == other.indices
    }
}
impl Eq for Candidate {}

impl Ord for Candidate {
    // reversed: BinaryHeap is a max-heap and we pop cheapest first,
    // ties by lexicographic index set
    fn cmp(&self, other: &Self) -> Ordering {
        other.weight.total_cmp(&self.weight).then_with(|| other.indices.cmp(&self.indices))
    }
}
impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Streams size-`k` index sets of `owal` in nondecreasing total weight.
///
/// Every set is generated exactly once from a two-children successor rule:
/// advancing the last index always yields a child, and advancing the index
/// just before the final consecutive run yields the second child when it
/// trails that run by exactly two slots. Parents never weigh more than
/// children, so a frontier heap pops sets in global weight order.
pub struct SublistEnumerator<'a> {
    owal: &'a Owal,
    k: usize,
    heap: BinaryHeap<Candidate>,
    emitted: u64,
}

impl<'a> SublistEnumerator<'a> {
    pub fn new(owal: &'a Owal, k: usize) -> Self {
        let m = owal.len();
        let mut heap = BinaryHeap::new();
        if k >= 1 && k <= m {
            let indices: Vec<u32> = (0..k as u32).collect();
            let weight = indices.iter().map(|&i| owal.entries()[i as usize].0).sum();
            heap.push(Candidate { weight, indices });
        }
        SublistEnumerator { owal, k, heap, emitted: 0 }
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    fn push_children(&mut self, cand: &Candidate) {
        let m = self.owal.len() as u32;
        let k = self.k;
        let entries = self.owal.entries();
        let last = cand.indices[k - 1];
        if last + 1 < m {
            let mut ix = cand.indices.clone();
            ix[k - 1] += 1;
            let weight = cand.weight - entries[last as usize].0 + entries[(last + 1) as usize].0;
            self.heap.push(Candidate { weight, indices: ix });
        }
        // start of the maximal consecutive run ending at the last index
        let mut t = k - 1;
        while t > 0 && cand.indices[t - 1] + 1 == cand.indices[t] {
            t -= 1;
        }
        if t >= 1 && cand.indices[t] == cand.indices[t - 1] + 2 {
            let moved = cand.indices[t - 1];
            let mut ix = cand.indices.clone();
            ix[t - 1] += 1;
            let weight = cand.weight - entries[moved as usize].0 + entries[(moved + 1) as usize].0;
            self.heap.push(Candidate { weight, indices: ix });
        }
    }
}

impl Iterator for SublistEnumerator<'_> {
    type Item = EdgeSubList;

    fn next(&mut self) -> Option<EdgeSubList> {
        let cand = self.heap.pop()?;
        self.push_children(&cand);
        self.emitted += 1;
        let indices: Vec<usize> = cand.indices.iter().map(|&i| i as usize).collect();
        Some(self.owal.sublist_at(&indices))
    }
}

/// Convenience constructor matching the iterator's documented contract.
pub fn enumerate_sublists_by_weight(owal: &Owal, k: usize) -> SublistEnumerator<'_> {
    SublistEnumerator::new(owal, k)
}

/// First feasible sublist in weight order, which is an optimal solution.
pub fn owal_exact(inst: &Instance, mode: WalkMode, budget: u64) -> Result<SolveReport> {
    let p = inst.p();
    let k = match mode {
        WalkMode::Path => p - 1,
        WalkMode::Circuit => p,
    };
    let owal = build_owal(inst);
    let mut checked = 0u64;
    let mut last_weight = None;
    for sub in enumerate_sublists_by_weight(&owal, k) {
        if checked >= budget {
            return Err(Error::BudgetExhausted { checked, last_weight });
        }
        checked += 1;
        last_weight = Some(sub.weight());
        if sub.is_valid(p, mode) {
            let order = sub.to_order(p, mode)?;
            let solution = match mode {
                WalkMode::Path => Solution::Path(HamPath::new(inst, order)?.canonicalized()),
                WalkMode::Circuit => Solution::Circuit(Tour::new(inst, order)?.canonicalized()),
            };
            let weight = solution.weight();
            return Ok(SolveReport { solution, weight, candidates_checked: checked });
        }
    }
    Err(Error::BudgetExhausted { checked, last_weight })
}

/// Exhaustive permutation oracle. Circuits fix vertex 1 and scan one
/// direction of each cycle; paths scan one orientation of each open order.
/// Ties resolve to the first hit in lexicographic enumeration order.
pub fn brute_force(inst: &Instance, mode: WalkMode) -> Result<SolveReport> {
    let p = inst.p();
    if p > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { p, max: BRUTE_FORCE_LIMIT });
    }
    let mut checked = 0u64;
    let mut best_order: Option<Vec<usize>> = None;
    let mut best_weight = f64::INFINITY;
    match mode {
        WalkMode::Circuit => {
            let mut rest: Vec<usize> = (2..=p).collect();
            loop {
                // skip the reversed duplicate of each cycle
                if rest[0] < rest[p - 2] {
                    checked += 1;
                    let mut w = inst.weight(1, rest[0]);
                    for e in rest.windows(2) {
                        w += inst.weight(e[0], e[1]);
                    }
                    w += inst.weight(rest[p - 2], 1);
                    if w < best_weight {
                        best_weight = w;
                        let mut order = vec![1];
                        order.extend_from_slice(&rest);
                        best_order = Some(order);
                    }
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
        }
        WalkMode::Path => {
            let mut order: Vec<usize> = (1..=p).collect();
            loop {
                if order[0] < order[p - 1] {
                    checked += 1;
                    let w: f64 = order.windows(2).map(|e| inst.weight(e[0], e[1])).sum();
                    if w < best_weight {
                        best_weight = w;
                        best_order = Some(order.clone());
                    }
                }
                if !next_permutation(&mut order) {
                    break;
                }
            }
        }
    }
    let order = best_order.expect("p >= 3 leaves at least one walk");
    let solution = match mode {
        WalkMode::Path => Solution::Path(HamPath::new(inst, order)?.canonicalized()),
        WalkMode::Circuit => Solution::Circuit(Tour::new(inst, order)?.canonicalized()),
    };
    let weight = solution.weight();
    Ok(SolveReport { solution, weight, candidates_checked: checked })
}

/// Scans all `p!` relabelings and returns one maximizing the triangular sum
/// together with that maximum. Because the triangular and superdiagonal sums
/// partition the upper triangle, the returned relabeling also carries a
/// minimal diagonal path.
pub fn max_triangular_relabeling(inst: &Instance) -> Result<(Instance, f64)> {
    let p = inst.p();
    if p > RELABEL_LIMIT {
        return Err(Error::TooLarge { p, max: RELABEL_LIMIT });
    }
    let mut perm: Vec<usize> = (1..=p).collect();
    let mut best_perm = perm.clone();
    let mut best = f64::NEG_INFINITY;
    loop {
        let mut tri = 0.0;
        for i in 1..=p - 2 {
            for j in (i + 2)..=p {
                tri += inst.weight(perm[i - 1], perm[j - 1]);
            }
        }
        if tri > best {
            best = tri;
            best_perm.copy_from_slice(&perm);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let rows: Vec<Vec<f64>> =
        (0..p).map(|i| (0..p).map(|j| inst.weight(best_perm[i], best_perm[j])).collect()).collect();
    let coords = inst.coords().map(|c| best_perm.iter().map(|&v| c[v - 1]).collect::<Vec<_>>());
    let relabeled = Instance::from_rows(format!("{}-relabeled", inst.name()), &rows, coords)?;
    Ok((relabeled, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_random_instance, InstanceKind};

    fn ex5a() -> Instance {
        Instance::from_rows(
            "ex5a",
            &[
                vec![0.0, 1.0, 6.0, 8.0, 4.0],
                vec![1.0, 0.0, 8.0, 5.0, 6.0],
                vec![6.0, 8.0, 0.0, 9.0, 7.0],
                vec![8.0, 5.0, 9.0, 0.0, 8.0],
                vec![4.0, 6.0, 7.0, 8.0, 0.0],
            ],
            None,
        )
        .unwrap()
    }

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
    fn first_yield_is_the_cheapest_prefix() {
        let owal = build_owal(&ex5a());
        let first = enumerate_sublists_by_weight(&owal, 4).next().unwrap();
        assert_eq!(first.weight(), 16.0);
        assert_eq!(first.edges(), &[(1, 2), (1, 5), (2, 4), (1, 3)]);
    }

    #[test]
    fn full_size_enumeration_is_a_single_set() {
        let owal = build_owal(&ex5a());
        let mut it = enumerate_sublists_by_weight(&owal, 10);
        let only = it.next().unwrap();
        assert_eq!(only.len(), 10);
        assert!(it.next().is_none());
    }

    #[test]
    fn enumerator_is_nondecreasing() {
        for seed in [0, 1, 2] {
            let inst = gen_random_instance(seed, 6, InstanceKind::Uniform, 10.0).unwrap();
            let owal = build_owal(&inst);
            let weights: Vec<f64> =
                enumerate_sublists_by_weight(&owal, 6).take(50).map(|s| s.weight()).collect();
            for w in weights.windows(2) {
                assert!(w[0] <= w[1] + 1e-12);
            }
        }
    }

    #[test]
    fn enumerator_is_complete_and_duplicate_free() {
        use std::collections::BTreeSet;
        let inst = gen_random_instance(4, 5, InstanceKind::Uniform, 7.0).unwrap();
        let owal = build_owal(&inst);
        // m = 10; check a few k values against C(10, k)
        for (k, expect) in [(1usize, 10u64), (4, 210), (5, 252), (9, 10)] {
            let sets: Vec<BTreeSet<(usize, usize)>> = enumerate_sublists_by_weight(&owal, k)
                .map(|s| s.edges().iter().copied().collect())
                .collect();
            assert_eq!(sets.len() as u64, expect, "k = {k}");
            let distinct: BTreeSet<_> = sets.iter().cloned().collect();
            assert_eq!(distinct.len(), sets.len(), "k = {k}");
        }
    }

    /// The lazy stream must reproduce, element for element, the order of a
    /// full materialization sorted by (total weight, index set) — including
    /// the tie-break.
    #[test]
    fn enumerator_matches_materialized_sort_exactly() {
        fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur: Vec<usize> = (0..k).collect();
            loop {
                out.push(cur.clone());
                let mut i = k;
                let mut moved = false;
                while i > 0 {
                    i -= 1;
                    if cur[i] < m - (k - i) {
                        cur[i] += 1;
                        for j in (i + 1)..k {
                            cur[j] = cur[j - 1] + 1;
                        }
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    return out;
                }
            }
        }
        for seed in 0..4u64 {
            // small ranges force plenty of weight ties
            let inst = gen_random_instance(seed, 5, InstanceKind::Uniform, 3.0).unwrap();
            let owal = build_owal(&inst);
            for k in [2usize, 4, 5] {
                let mut all = combinations(owal.len(), k);
                let weight_of =
                    |ix: &[usize]| ix.iter().map(|&i| owal.entries()[i].0).sum::<f64>();
                all.sort_by(|a, b| weight_of(a).total_cmp(&weight_of(b)).then(a.cmp(b)));
                let expect: Vec<Vec<(usize, usize)>> =
                    all.iter().map(|ix| owal.sublist_at(ix).edges().to_vec()).collect();
                let got: Vec<Vec<(usize, usize)>> = enumerate_sublists_by_weight(&owal, k)
                    .map(|s| s.edges().to_vec())
                    .collect();
                assert_eq!(got, expect, "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn shortest_path_and_circuit_on_ex5a() {
        let inst = ex5a();
        let path = owal_exact(&inst, WalkMode::Path, DEFAULT_CANDIDATE_BUDGET).unwrap();
        assert_eq!(path.weight, 17.0);
        assert_eq!(path.solution.order(), &[3, 5, 1, 2, 4]);

        let circ = owal_exact(&inst, WalkMode::Circuit, DEFAULT_CANDIDATE_BUDGET).unwrap();
        assert_eq!(circ.weight, 26.0);
        assert_eq!(circ.solution.order(), &[1, 2, 4, 3, 5]);
    }

    #[test]
    fn shortest_circuit_on_k6() {
        // 1-5-2-3-4-6 closes at weight 12, undercutting the more visible
        // 13-weight circuit 1-2-3-4-6-5
        let r = owal_exact(&k6(), WalkMode::Circuit, DEFAULT_CANDIDATE_BUDGET).unwrap();
        assert_eq!(r.weight, 12.0);
        assert_eq!(r.solution.order(), &[1, 5, 2, 3, 4, 6]);
    }

    #[test]
    fn budget_exhaustion_reports_progress() {
        let err = owal_exact(&k6(), WalkMode::Circuit, 3).unwrap_err();
        match err {
            Error::BudgetExhausted { checked, last_weight } => {
                assert_eq!(checked, 3);
                assert!(last_weight.is_some());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn brute_force_matches_known_optima() {
        let p5 = brute_force(&ex5a(), WalkMode::Path).unwrap();
        assert_eq!(p5.weight, 17.0);
        let c6 = brute_force(&k6(), WalkMode::Circuit).unwrap();
        assert_eq!(c6.weight, 12.0);
        assert_eq!(c6.solution.order(), &[1, 5, 2, 3, 4, 6]);

        let unit5 = gen_random_instance(0, 5, InstanceKind::Uniform, 1.0).unwrap();
        assert_eq!(brute_force(&unit5, WalkMode::Circuit).unwrap().weight, 5.0);
    }

    #[test]
    fn brute_force_guards_large_instances() {
        let inst = gen_random_instance(0, 13, InstanceKind::Uniform, 10.0).unwrap();
        assert!(matches!(brute_force(&inst, WalkMode::Circuit), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn oracle_agrees_with_owal_exact() {
        for seed in 0..8 {
            for kind in [InstanceKind::Uniform, InstanceKind::Euclidean] {
                let inst = gen_random_instance(seed, 4 + (seed as usize % 4), kind, 50.0).unwrap();
                for mode in [WalkMode::Path, WalkMode::Circuit] {
                    let a = owal_exact(&inst, mode, DEFAULT_CANDIDATE_BUDGET).unwrap();
                    let b = brute_force(&inst, mode).unwrap();
                    assert_eq!(a.weight, b.weight, "seed {seed} {kind:?} {mode:?}");
                }
            }
        }
    }

    #[test]
    fn triangular_relabeling_on_ex5a() {
        let (relabeled, max_tri) = max_triangular_relabeling(&ex5a()).unwrap();
        assert_eq!(max_tri, 45.0);
        assert_eq!(relabeled.triangular_sum(), 45.0);
        assert_eq!(relabeled.diagonal_path_weight(), 17.0);
    }

    #[test]
    fn triangular_relabeling_ties_on_unit_weights() {
        let unit = gen_random_instance(0, 5, InstanceKind::Uniform, 1.0).unwrap();
        let (_, max_tri) = max_triangular_relabeling(&unit).unwrap();
        assert_eq!(max_tri, unit.triangular_sum());
    }

    #[test]
    fn max_triangular_diagonal_equals_shortest_path() {
        // the two objectives partition a constant, so they must agree
        for seed in 0..6 {
            let inst = gen_random_instance(seed, 6, InstanceKind::Uniform, 20.0).unwrap();
            let (relabeled, _) = max_triangular_relabeling(&inst).unwrap();
            let oracle = brute_force(&inst, WalkMode::Path).unwrap();
            assert_eq!(relabeled.diagonal_path_weight(), oracle.weight);
        }
    }

    #[test]
    fn optimal_circuit_weight_is_relabeling_invariant() {
        let inst = gen_random_instance(21, 6, InstanceKind::Uniform, 30.0).unwrap();
        let base = brute_force(&inst, WalkMode::Circuit).unwrap().weight;
        let mut t = inst;
        for (a, b) in [(1, 4), (2, 3), (5, 6), (1, 2)] {
            t = t.apply_transposition(a, b).unwrap();
            assert_eq!(brute_force(&t, WalkMode::Circuit).unwrap().weight, base);
        }
    }
}
