//! Round-synchronous simulation of the row/column extrema peeling for SEP.
//!
//! Machines are plain record buckets filled in index order, so traces depend
//! only on the input and the configuration. Within a round the machines may be
//! processed in parallel; their outputs are merged in machine order.

mod aggregate;
mod config;
mod run;

pub use aggregate::{semigroup_aggregate, Aggregate, SemigroupOp};
pub use config::{check_mpc_constraints, MpcConfig, Violation};
pub use run::{run_sep_mpc, sequential_reference, MpcRun, MpcTrace, RoundStats};
