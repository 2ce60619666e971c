use thiserror::Error;

/// Errors surfaced by graph construction, solvers and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("edge set contains a directed cycle: {0:?}")]
    CycleDetected(Vec<usize>),
    #[error("invalid thresholds: require 1 <= t1 <= t2, got t1 = {t1}, t2 = {t2}")]
    InvalidThresholds { t1: String, t2: String },
    #[error("assignment covers {got} vertices, graph has {expected}")]
    MissingVertex { expected: usize, got: usize },
    #[error("cycle is not simple (vertex {0} repeats)")]
    NotSimple(usize),
    #[error("step {position} has the wrong kind for pair ({u}, {v})")]
    WrongStepKind { position: usize, u: usize, v: usize },
    #[error("input dag is degenerate (models a weak order)")]
    DegenerateInput,
    #[error("approximation factor {factor} outside 1..=lambda ({lambda})")]
    InvalidFactor { factor: usize, lambda: String },
    #[error("vertex {0} has nonpositive weight")]
    NonpositiveWeight(usize),
    #[error("instance too large for this oracle: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("weights would overflow the scalar type; use a wider weight type")]
    ArithmeticOverflow,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
