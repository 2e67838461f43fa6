//! Linear relaxation of REP: program export, ingestion of an externally
//! computed fractional optimum, and rounding.

mod export;
mod fractional;
mod rounding;

pub use export::{cell_paths, export_lp, var_name};
pub use fractional::{import_fractional, parse_fractional, parse_rational, FractionalSolution, TOLERANCE};
pub use rounding::{
    chernoff_tail, chernoff_tail_with, deterministic_round, randomized_round, sample_assignment, TailEstimate,
};
