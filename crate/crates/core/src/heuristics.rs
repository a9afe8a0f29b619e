//! Tour-construction heuristics.
//!
//! * nearest neighbor and its inclusion/exclusion-weight variant,
//! * greedy edge contraction,
//! * two relabeling schemes that move a short Hamiltonian path onto the
//!   superdiagonal of the weight matrix,
//! * an angular sweep around the center of mass for planar instances,
//!   plus the total turning angle of a planar walk.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::sublist::EdgeSubList;
use crate::tour::{HamPath, Tour, WalkMode};
use crate::util::UnionFind;

/// Inclusion weights (the instance weights) together with exclusion weights:
/// `wea(j,k)` is the weight sum ruled out by selecting the directed edge
/// `(j,k)` in a symmetric digraph view of the instance.
#[derive(Debug, Clone, Serialize)]
pub struct ExclusionMatrices {
    p: usize,
    wia: Vec<f64>,
    wea: Vec<f64>,
}

impl ExclusionMatrices {
    pub fn wia(&self, j: usize, k: usize) -> f64 {
        self.wia[(j - 1) * self.p + (k - 1)]
    }

    pub fn wea(&self, j: usize, k: usize) -> f64 {
        self.wea[(j - 1) * self.p + (k - 1)]
    }
}

/// `wea(j,k) = sum_{l != j} w(l,k) + sum_{m != k} w(j,m)`; the diagonal is
/// left at zero and never consulted.
pub fn build_wea(inst: &Instance) -> ExclusionMatrices {
    let p = inst.p();
    let row_sum: Vec<f64> = (1..=p).map(|i| (1..=p).map(|j| inst.weight(i, j)).sum()).collect();
    let mut wia = vec![0.0; p * p];
    let mut wea = vec![0.0; p * p];
    for j in 1..=p {
        for k in 1..=p {
            if j == k {
                continue;
            }
            let w = inst.weight(j, k);
            wia[(j - 1) * p + (k - 1)] = w;
            wea[(j - 1) * p + (k - 1)] = row_sum[k - 1] + row_sum[j - 1] - 2.0 * w;
        }
    }
    ExclusionMatrices { p, wia, wea }
}

/// Classic nearest neighbor from `start`; ties go to the smaller index.
pub fn nearest_neighbor(inst: &Instance, start: usize) -> Result<Tour> {
    let p = inst.p();
    if start < 1 || start > p {
        return Err(Error::IndexOutOfRange { index: start, p });
    }
    let mut order = vec![start];
    let mut visited = vec![false; p + 1];
    visited[start] = true;
    while order.len() < p {
        let cur = *order.last().unwrap();
        let next = (1..=p)
            .filter(|&v| !visited[v])
            .min_by(|&a, &b| inst.weight(cur, a).total_cmp(&inst.weight(cur, b)).then(a.cmp(&b)))
            .unwrap();
        visited[next] = true;
        order.push(next);
    }
    Tour::new(inst, order)
}

/// Order in which the two selection criteria are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MnnPolicy {
    /// Minimize included weight first, break ties by maximal excluded weight.
    IncludeFirst,
    /// Maximize excluded weight first, break ties by minimal included weight.
    ExcludeFirst,
}

/// Nearest neighbor driven by the inclusion/exclusion weight pair. The
/// primary criterion filters the candidate successors, the secondary breaks
/// ties, and remaining ties go to the smaller index. Revisits are never
/// allowed, so no subcircuit can form before the final closing edge.
pub fn modified_nn(inst: &Instance, policy: MnnPolicy, start: usize) -> Result<Tour> {
    let p = inst.p();
    if start < 1 || start > p {
        return Err(Error::IndexOutOfRange { index: start, p });
    }
    type Criterion<'a> = Box<dyn Fn(usize) -> f64 + 'a>;
    let ex = build_wea(inst);
    let mut order = vec![start];
    let mut visited = vec![false; p + 1];
    visited[start] = true;
    while order.len() < p {
        let cur = *order.last().unwrap();
        let cands: Vec<usize> = (1..=p).filter(|&v| !visited[v]).collect();
        let (primary, secondary): (Criterion<'_>, Criterion<'_>) = match policy {
            MnnPolicy::IncludeFirst => {
                (Box::new(|v| ex.wia(cur, v)), Box::new(|v| -ex.wea(cur, v)))
            }
            MnnPolicy::ExcludeFirst => {
                (Box::new(|v| -ex.wea(cur, v)), Box::new(|v| ex.wia(cur, v)))
            }
        };
        let best_primary = cands.iter().map(|&v| primary(v)).fold(f64::INFINITY, f64::min);
        let filtered: Vec<usize> =
            cands.into_iter().filter(|&v| primary(v) == best_primary).collect();
        let next = filtered
            .into_iter()
            .min_by(|&a, &b| secondary(a).total_cmp(&secondary(b)).then(a.cmp(&b)))
            .unwrap();
        visited[next] = true;
        order.push(next);
    }
    Tour::new(inst, order)
}

/// Greedy edge contraction: repeatedly take the globally cheapest edge whose
/// endpoints are free ends of different path fragments, merge the fragments,
/// and close the remaining Hamiltonian path into a circuit. Ties go to the
/// lexicographically smaller edge.
pub fn contraction_tour(inst: &Instance) -> Result<Tour> {
    let p = inst.p();
    let mut degree = vec![0usize; p + 1];
    let mut uf = UnionFind::new(p);
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(p);
    while chosen.len() < p - 1 {
        let mut best: Option<(f64, usize, usize)> = None;
        for (i, j, w) in inst.edges() {
            if degree[i] >= 2 || degree[j] >= 2 || uf.connected(i - 1, j - 1) {
                continue;
            }
            let better = match best {
                None => true,
                Some((bw, bi, bj)) => w < bw || (w == bw && (i, j) < (bi, bj)),
            };
            if better {
                best = Some((w, i, j));
            }
        }
        let (_, i, j) = best.expect("a complete graph always extends");
        degree[i] += 1;
        degree[j] += 1;
        uf.union(i - 1, j - 1);
        chosen.push((i, j));
    }
    let (a, b) = {
        let mut ends = (1..=p).filter(|&v| degree[v] == 1);
        (ends.next().unwrap(), ends.next().unwrap())
    };
    chosen.push((a.min(b), a.max(b)));
    let order = EdgeSubList::new(inst, &chosen)?.to_order(p, WalkMode::Circuit)?;
    Tour::new(inst, order)
}

/// Row-by-row relabeling: for each row `i`, brings the minimum of
/// `{w(i,j) : j > i}` to the superdiagonal position `(i, i+1)` with the
/// transposition `(i+1, j)`. Returns the relabeled instance and its
/// diagonal path `1 -> 2 -> ... -> p`.
pub fn transposition_approx_v1(inst: &Instance) -> Result<(Instance, HamPath)> {
    let p = inst.p();
    let mut cur = inst.clone();
    for i in 1..=p - 2 {
        let j_min = ((i + 1)..=p)
            .min_by(|&a, &b| cur.weight(i, a).total_cmp(&cur.weight(i, b)).then(a.cmp(&b)))
            .unwrap();
        if j_min != i + 1 {
            cur = cur.apply_transposition(i + 1, j_min)?;
        }
    }
    let path = HamPath::new(&cur, (1..=p).collect())?;
    Ok((cur, path))
}

/// Relabeling that first banishes the heaviest edge to position `(1, p)`,
/// then pins the cheapest available edges onto the superdiagonal from both
/// ends inward, and finally sweeps transpositions `(i, i+2)` as long as one
/// strictly shortens the diagonal path.
pub fn transposition_approx_v2(inst: &Instance) -> Result<(Instance, HamPath)> {
    let p = inst.p();
    if p < 4 {
        return Err(Error::BadParameter(format!("need p >= 4, got {p}")));
    }
    let mut cur = inst.clone();

    // step 1: heaviest edge (ties lexicographic) to (1, p) via (1,i)(j,p)
    let (_, hi, hj) = inst
        .edges()
        .map(|(i, j, w)| (w, i, j))
        .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)).then(b.2.cmp(&a.2)))
        .unwrap();
    if hi != 1 {
        cur = cur.apply_transposition(1, hi)?;
    }
    if hj != p {
        cur = cur.apply_transposition(hj, p)?;
    }

    // paired pinning from both ends; stop when the free ranges meet
    let mut k = 1;
    while k + 1 < p - k {
        // left target (k, k+1): minimize over free positions k+1..=p-k
        let j_left = ((k + 1)..=(p - k))
            .min_by(|&a, &b| cur.weight(k, a).total_cmp(&cur.weight(k, b)).then(a.cmp(&b)))
            .unwrap();
        if j_left != k + 1 {
            cur = cur.apply_transposition(k + 1, j_left)?;
        }
        // right target (p-k, p-k+1): minimize over the remaining free block
        if k + 2 <= p - k {
            let j_right = ((k + 2)..=(p - k))
                .min_by(|&a, &b| {
                    cur.weight(p - k + 1, a).total_cmp(&cur.weight(p - k + 1, b)).then(a.cmp(&b))
                })
                .unwrap();
            if j_right != p - k {
                cur = cur.apply_transposition(p - k, j_right)?;
            }
        }
        k += 1;
    }

    // improvement passes with (i, i+2), strict decrease only
    loop {
        let mut improved = false;
        for i in 1..=p - 2 {
            let cand = cur.apply_transposition(i, i + 2)?;
            if cand.diagonal_path_weight() < cur.diagonal_path_weight() {
                cur = cand;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }

    let path = HamPath::new(&cur, (1..=p).collect())?;
    Ok((cur, path))
}

/// Circumscribing frame for the angular sweep: center of mass, covering
/// radius, and each vertex's polar angle about the center.
#[derive(Debug, Clone, Serialize)]
pub struct SweepFrame {
    pub center: (f64, f64),
    pub radius: f64,
    pub angles: Vec<f64>,
}

pub fn sweep_frame(inst: &Instance) -> Result<SweepFrame> {
    let pts = inst.coords().ok_or(Error::NoCoordinates)?;
    let n = pts.len() as f64;
    let center =
        (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let radius = pts
        .iter()
        .map(|p| ((p.0 - center.0).powi(2) + (p.1 - center.1).powi(2)).sqrt())
        .fold(0.0, f64::max);
    let angles = pts
        .iter()
        .map(|p| {
            let a = (p.1 - center.1).atan2(p.0 - center.0);
            if a < 0.0 {
                a + std::f64::consts::TAU
            } else {
                a
            }
        })
        .collect();
    Ok(SweepFrame { center, radius, angles })
}

/// Visits the vertices counterclockwise by polar angle about the center of
/// mass. Angle ties go to the smaller distance from the center, then to the
/// smaller index, so a vertex sitting exactly on the center is still placed.
pub fn angular_sweep(inst: &Instance) -> Result<Tour> {
    let frame = sweep_frame(inst)?;
    let pts = inst.coords().unwrap();
    let dist = |v: usize| {
        let (x, y) = pts[v - 1];
        ((x - frame.center.0).powi(2) + (y - frame.center.1).powi(2)).sqrt()
    };
    let mut order: Vec<usize> = (1..=inst.p()).collect();
    order.sort_by(|&a, &b| {
        frame.angles[a - 1]
            .total_cmp(&frame.angles[b - 1])
            .then(dist(a).total_cmp(&dist(b)))
            .then(a.cmp(&b))
    });
    Ok(Tour::new(inst, order)?.canonicalized())
}

/// Sum of absolute turning angles of the tangent along the walk, each turn
/// measured in `[0, pi]`. Circuits turn at every vertex, paths only at the
/// interior ones.
pub fn turning_sum(inst: &Instance, order: &[usize], mode: WalkMode) -> Result<f64> {
    let pts = inst.coords().ok_or(Error::NoCoordinates)?;
    crate::tour::check_permutation(order, inst.p())?;
    let p = order.len();
    let at = |k: usize| pts[order[k % p] - 1];
    let stops = match mode {
        WalkMode::Circuit => (0..p).collect::<Vec<_>>(),
        WalkMode::Path => (1..p - 1).collect(),
    };
    let mut total = 0.0;
    for k in stops {
        let (prev, here, next) = match mode {
            WalkMode::Circuit => (at(k + p - 1), at(k), at(k + 1)),
            WalkMode::Path => (at(k - 1), at(k), at(k + 1)),
        };
        let d1 = (here.0 - prev.0, here.1 - prev.1);
        let d2 = (next.0 - here.0, next.1 - here.1);
        if (d1.0 == 0.0 && d1.1 == 0.0) || (d2.0 == 0.0 && d2.1 == 0.0) {
            return Err(Error::ZeroLengthSegment { at: k + 1 });
        }
        let cross = d1.0 * d2.1 - d1.1 * d2.0;
        let dot = d1.0 * d2.0 + d1.1 * d2.1;
        total += cross.abs().atan2(dot);
    }
    Ok(total)
}
