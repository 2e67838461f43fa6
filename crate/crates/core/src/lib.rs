//! Approximation algorithms for the rectangle escape problem (REP) and its
//! grid special case, the square escape problem (SEP).
//!
//! Every element of an instance is extended to the bounding box in one of four
//! directions; the goal is to keep the maximum number of overlapping
//! extensions (the density) small. The crate provides:
//!
//! * [`geometry`]: instances, escape paths, the escape grid and the density
//!   verifier every solver is checked against,
//! * [`oracle`]: exhaustive solvers for small instances,
//! * [`peeling`]: escape DAGs and level peeling for disjoint REP,
//! * [`matching`]: the boundary-density matching solver for SEP,
//! * [`mpc`]: the peeling algorithm for SEP on a simulated MPC cluster,
//! * [`lp`]: LP export, fractional-solution ingestion and rounding,
//! * [`gen`]: seeded instance generators.
//!
//! With the default `parallel` feature the data-parallel loops (oracle
//! enumeration, Monte Carlo trials, per-direction DAG construction, simulated
//! machines) run on rayon; [`Exec::Sequential`] forces the serial path.

pub mod error;
pub mod exec;
pub mod gen;
pub mod geometry;
pub mod lp;
pub mod matching;
pub mod mpc;
pub mod oracle;
pub mod peeling;
pub mod solution;

pub use error::{EscapeError, Result};
pub use exec::Exec;
pub use geometry::{
    Boundary, DensityReport, Direction, EscapeAssignment, EscapeGrid, Instance, LatticePoint,
    Rect, RepInstance, SepInstance, Witness,
};
pub use solution::Solution;
