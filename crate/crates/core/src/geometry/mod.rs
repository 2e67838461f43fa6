//! Instances, escape paths, the escape grid and the density verifier.

mod density;
mod direction;
mod disjoint;
mod grid;
mod instance;
mod segtree;
mod shapes;
pub mod symmetry;

pub use density::{compute_density_rep, compute_density_sep, DensityReport, Witness};
pub use direction::{Axis, Direction, EscapeAssignment};
pub use disjoint::{check_disjoint_rep, check_disjoint_sep};
pub use grid::{build_escape_grid, EscapeGrid};
pub use instance::{Instance, RepInstance, SepInstance};
pub use shapes::{escape_path, Boundary, LatticePoint, Rect};
