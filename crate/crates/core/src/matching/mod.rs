//! Minimum boundary density for SEP by bipartite matching.
//!
//! Points sit on the left; each distinct boundary projection contributes
//! `k_B` copies on the right. A left-perfect matching exists exactly when
//! every point can be routed so that no boundary point is reached more than
//! `k_B` times.

mod hopcroft_karp;
mod sep;

pub use hopcroft_karp::{max_matching, BipartiteGraph, Matching};
pub use sep::{
    feasible_at, projections, solve_sep, solve_sep_with, MatchedPair, MatchingResult, ScanMode,
};
