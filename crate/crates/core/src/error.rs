use thiserror::Error;

/// Errors surfaced by the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence is not a permutation of 1..={p}")]
    NotAPermutation { p: usize },

    #[error("vertex {index} out of range 1..={p}")]
    IndexOutOfRange { index: usize, p: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("weight matrix asymmetric at ({i},{j}): {a} vs {b}")]
    SymmetryViolation { i: usize, j: usize, a: f64, b: f64 },

    #[error("edge sublist does not describe the requested walk")]
    InfeasibleSublist,

    #[error("instance carries no coordinates")]
    NoCoordinates,

    #[error("zero-length segment at stop {at}")]
    ZeroLengthSegment { at: usize },

    #[error("state dimensions differ: {a} vs {b} qubits")]
    DimensionMismatch { a: u32, b: u32 },

    #[error("prefix longer than the qubit count")]
    BadPrefix,

    #[error("target {target} is not in the bag")]
    TargetAbsent { target: u64 },

    #[error("instance too large: p = {p}, limit {max}")]
    TooLarge { p: usize, max: usize },

    #[error("budget exhausted after {checked} candidates")]
    BudgetExhausted { checked: u64, last_weight: Option<f64> },

    #[error("column selection stuck after {nodes} search nodes")]
    GreedyStuck { nodes: u64 },

    #[error("edge set is not a spanning tree of the graph")]
    NotASpanningTree,

    #[error("tour has {tour_p} stops but the instance has {inst_p} vertices")]
    TourInstanceMismatch { tour_p: usize, inst_p: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
