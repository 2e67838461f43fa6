use serde::Serialize;

use super::segtree::MaxAddTree;
use super::{
    build_escape_grid, escape_path, Axis, EscapeAssignment, LatticePoint, RepInstance, SepInstance,
};
use crate::error::{EscapeError, Result};

/// Where a density maximum is attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    /// Open cell `(i, j)` of the escape grid.
    Cell { i: usize, j: usize },
    /// Lattice point of a SEP grid.
    Point { x: i64, y: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub density: u64,
    pub witness: Witness,
    /// Maximum restricted to the boundary: boundary lattice points for SEP,
    /// cells adjacent to the boundary for REP.
    pub boundary_density: u64,
    pub witness_boundary: Witness,
}

fn check_len(expected: usize, a: &EscapeAssignment) -> Result<()> {
    if a.len() != expected {
        return Err(EscapeError::AssignmentLength {
            expected,
            got: a.len(),
        });
    }
    Ok(())
}

/// Maximum number of escape paths covering an open cell of the escape grid.
///
/// Sweeps the grid columns left to right with a range-add / max tree over the
/// rows, `O(n log n)`. Ties resolve to the smallest `(i, j)`.
pub fn compute_density_rep(inst: &RepInstance, a: &EscapeAssignment) -> Result<DensityReport> {
    check_len(inst.len(), a)?;
    let grid = build_escape_grid(inst);
    let (cols, rows) = (grid.columns(), grid.rows());

    let mut opens: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cols + 1];
    let mut closes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cols + 1];
    for (r, &dir) in inst.rects.iter().zip(a.as_slice()) {
        let path = escape_path(r, dir, &inst.boundary);
        let (cs, rs) = grid.cell_span(&path);
        opens[cs.start].push((rs.start, rs.end));
        closes[cs.end].push((rs.start, rs.end));
    }

    let mut tree = MaxAddTree::new(rows);
    let mut best = (-1i64, Witness::Cell { i: 0, j: 0 });
    let mut best_boundary = (-1i64, Witness::Cell { i: 0, j: 0 });
    for i in 0..cols {
        for &(lo, hi) in &closes[i] {
            tree.add(lo, hi, -1);
        }
        for &(lo, hi) in &opens[i] {
            tree.add(lo, hi, 1);
        }
        let (v, j) = tree.global_max();
        if v > best.0 {
            best = (v, Witness::Cell { i, j });
        }
        let edge = if i == 0 || i + 1 == cols {
            (v, j)
        } else {
            let (bottom, top) = (tree.point(0), tree.point(rows - 1));
            if top > bottom {
                (top, rows - 1)
            } else {
                (bottom, 0)
            }
        };
        if edge.0 > best_boundary.0 {
            best_boundary = (edge.0, Witness::Cell { i, j: edge.1 });
        }
    }
    Ok(DensityReport {
        density: best.0 as u64,
        witness: best.1,
        boundary_density: best_boundary.0 as u64,
        witness_boundary: best_boundary.1,
    })
}

/// Maximum number of escape paths through a lattice point. A path is the
/// inclusive lattice segment from the point to the boundary.
///
/// Coverage is evaluated on the compressed coordinates (point coordinates
/// plus the boundary lines); between two compressed coordinates coverage can
/// only drop, so the maximum is always attained on them.
pub fn compute_density_sep(inst: &SepInstance, a: &EscapeAssignment) -> Result<DensityReport> {
    check_len(inst.len(), a)?;
    let b = inst.boundary;
    let mut xs: Vec<i64> = inst.points.iter().map(|p| p.x).chain([0, b.width]).collect();
    let mut ys: Vec<i64> = inst.points.iter().map(|p| p.y).chain([0, b.height]).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let (nx, ny) = (xs.len(), ys.len());
    let ix = |x: i64| xs.binary_search(&x).expect("compressed x");
    let iy = |y: i64| ys.binary_search(&y).expect("compressed y");

    // horizontal paths: a single row over a column range; vertical paths: a
    // single column over a row range
    let mut h_open: Vec<Vec<usize>> = vec![Vec::new(); nx];
    let mut h_close: Vec<Vec<usize>> = vec![Vec::new(); nx];
    let mut vertical: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nx];
    for (p, &dir) in inst.points.iter().zip(a.as_slice()) {
        let (cx, cy) = (ix(p.x), iy(p.y));
        let end = b.project(*p, dir);
        match dir.axis() {
            Axis::Horizontal => {
                let (lo, hi) = (cx.min(ix(end.x)), cx.max(ix(end.x)));
                h_open[lo].push(cy);
                h_close[hi].push(cy);
            }
            Axis::Vertical => {
                let (lo, hi) = (cy.min(iy(end.y)), cy.max(iy(end.y)));
                vertical[cx].push((lo, hi + 1));
            }
        }
    }

    let mut tree = MaxAddTree::new(ny);
    let origin = Witness::Point { x: 0, y: 0 };
    let mut best = (-1i64, origin);
    let mut best_boundary = (-1i64, origin);
    for c in 0..nx {
        for &row in &h_open[c] {
            tree.add(row, row + 1, 1);
        }
        for &(lo, hi) in &vertical[c] {
            tree.add(lo, hi, 1);
        }
        let (v, j) = tree.global_max();
        if v > best.0 {
            best = (v, Witness::Point { x: xs[c], y: ys[j] });
        }
        let edge = if c == 0 || c + 1 == nx {
            (v, j)
        } else {
            let (bottom, top) = (tree.point(0), tree.point(ny - 1));
            if top > bottom {
                (top, ny - 1)
            } else {
                (bottom, 0)
            }
        };
        if edge.0 > best_boundary.0 {
            best_boundary = (edge.0, Witness::Point { x: xs[c], y: ys[edge.1] });
        }
        for &(lo, hi) in &vertical[c] {
            tree.add(lo, hi, -1);
        }
        for &row in &h_close[c] {
            tree.add(row, row + 1, -1);
        }
    }
    Ok(DensityReport {
        density: best.0 as u64,
        witness: best.1,
        boundary_density: best_boundary.0 as u64,
        witness_boundary: best_boundary.1,
    })
}

impl Witness {
    pub fn point(self) -> Option<LatticePoint> {
        match self {
            Witness::Point { x, y } => Some(LatticePoint::new(x, y)),
            Witness::Cell { .. } => None,
        }
    }
}
