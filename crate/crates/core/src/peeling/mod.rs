//! Level peeling for disjoint REP.
//!
//! For each direction the blocking relation is materialized as an escape DAG.
//! Peeling then repeatedly removes every rectangle that has no remaining
//! blocker in some direction and routes it that way. A rectangle's level is
//! the round in which it is removed.

mod dag;
mod interval;
mod peel;

pub use dag::{build_escape_dag, build_escape_dags, EscapeDag};
pub use interval::IntervalIndex;
pub use peel::{
    level_densities, peel, peel_dags, peel_with, solve_peeling, solve_peeling_with,
    PeelingResult, PeelingSolution,
};
