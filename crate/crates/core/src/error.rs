use thiserror::Error;

use crate::geometry::Direction;

pub type Result<T, E = EscapeError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum EscapeError {
    #[error("boundary must have positive width and height, got {width}x{height}")]
    InvalidBoundary { width: i64, height: i64 },

    #[error("element {index} is not a valid element of the {width}x{height} box: {detail}")]
    InvalidElement {
        index: usize,
        width: i64,
        height: i64,
        detail: String,
    },

    #[error("instance declared disjoint but elements {first} and {second} intersect")]
    NotDisjoint { first: usize, second: usize },

    #[error("assignment has {got} directions, instance has {expected} elements")]
    AssignmentLength { expected: usize, got: usize },

    #[error("instance has {n} elements, exhaustive search is capped at {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("instance is empty")]
    EmptyInstance,

    #[error("escape DAG for direction {0} contains a cycle")]
    Cycle(Direction),

    #[error("peeling stalled with {remaining} elements left")]
    NoProgress { remaining: usize },

    #[error("bound violated: {0}")]
    BoundViolation(String),

    #[error("incompatible input: {0}")]
    Incompatible(String),

    #[error("simulated machine {machine} exceeded its memory in round {round}: {records} records, cap {cap}")]
    MemoryCap {
        round: usize,
        machine: usize,
        records: usize,
        cap: usize,
    },

    #[error("round cap of {cap} iterations exceeded")]
    RoundCap { cap: usize },

    #[error("invalid MPC configuration: {0}")]
    MpcConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("fractional solution infeasible: {0}")]
    Infeasible(String),

    #[error("epsilon must lie in (0, 3), got {0}")]
    Epsilon(f64),

    #[error("generator: {0}")]
    Generator(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
