//! tourlab: a workbench for shortest Hamiltonian paths and circuits in
//! weighted complete graphs.
//!
//! The crate groups the machinery by what it computes:
//!
//! * [`instance`] — symmetric weight matrices, file formats, seeded
//!   generators, vertex relabeling;
//! * [`sublist`] — the ordered weighted adjacency list and the
//!   degree/connectivity feasibility checks on edge sublists;
//! * [`exact`] — lazy enumeration of sublists by total weight, the
//!   first-feasible exact solvers, and the permutation oracle;
//! * [`heuristics`] — five tour constructions plus the turning-angle metric
//!   for planar instances;
//! * [`bounds`] — row-minima lower bounds and per-tour gap bounds;
//! * [`cutset`] — fundamental cutset matrices, a Hamiltonicity test by
//!   chord-column selection, and a cutset-driven tour search;
//! * [`search`] — classical and state-vector unstructured-search
//!   simulators.
//!
//! Vertices are labeled `1..=p` throughout the public API.

pub mod bounds;
pub mod cutset;
pub mod error;
pub mod exact;
pub mod heuristics;
pub mod instance;
pub mod search;
pub mod sublist;
pub mod tour;
mod util;

pub use error::{Error, Result};
pub use instance::{gen_random_instance, Instance, InstanceKind};
pub use sublist::{build_owal, EdgeSubList, Owal};
pub use tour::{tour_weight, HamPath, Tour, WalkMode};
