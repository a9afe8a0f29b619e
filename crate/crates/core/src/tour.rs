//! Tours and Hamiltonian paths over an instance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// Whether a vertex sequence is read as an open walk or a closed circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WalkMode {
    Path,
    Circuit,
}

/// Checks that `order` is a permutation of `1..=p`.
pub fn check_permutation(order: &[usize], p: usize) -> Result<()> {
    if order.len() != p {
        return Err(Error::NotAPermutation { p });
    }
    let mut seen = vec![false; p];
    for &v in order {
        if v < 1 || v > p || seen[v - 1] {
            return Err(Error::NotAPermutation { p });
        }
        seen[v - 1] = true;
    }
    Ok(())
}

/// Total weight of `order` on `inst`: consecutive edges, plus the closing
/// edge when `mode` is `Circuit`.
pub fn tour_weight(inst: &Instance, order: &[usize], mode: WalkMode) -> Result<f64> {
    check_permutation(order, inst.p())?;
    let mut w: f64 = order.windows(2).map(|e| inst.weight(e[0], e[1])).sum();
    if mode == WalkMode::Circuit {
        w += inst.weight(order[inst.p() - 1], order[0]);
    }
    Ok(w)
}

/// A Hamiltonian circuit: a cyclic permutation of `1..=p` with its weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tour {
    order: Vec<usize>,
    weight: f64,
}

impl Tour {
    pub fn new(inst: &Instance, order: Vec<usize>) -> Result<Self> {
        let weight = tour_weight(inst, &order, WalkMode::Circuit)?;
        Ok(Tour { order, weight })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Rotates the cycle so vertex 1 comes first and picks the direction
    /// with the smaller second vertex. Weight is unchanged.
    pub fn canonicalized(mut self) -> Tour {
        let pos = self.order.iter().position(|&v| v == 1).expect("vertex 1 present");
        self.order.rotate_left(pos);
        let p = self.order.len();
        if p > 2 && self.order[1] > self.order[p - 1] {
            self.order[1..].reverse();
        }
        self
    }
}

/// A Hamiltonian path: an open permutation of `1..=p` with its weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamPath {
    order: Vec<usize>,
    weight: f64,
}

impl HamPath {
    pub fn new(inst: &Instance, order: Vec<usize>) -> Result<Self> {
        let weight = tour_weight(inst, &order, WalkMode::Path)?;
        Ok(HamPath { order, weight })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Orients the path so the smaller endpoint comes first.
    pub fn canonicalized(mut self) -> HamPath {
        if self.order.first() > self.order.last() {
            self.order.reverse();
        }
        self
    }
}
