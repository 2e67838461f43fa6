use std::ops::Range;

use super::{Rect, RepInstance};

/// The arrangement formed by extending every rectangle edge to the boundary.
///
/// Cell `(i, j)` is the open box `(xs[i], xs[i+1]) x (ys[j], ys[j+1])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeGrid {
    pub xs: Vec<i64>,
    pub ys: Vec<i64>,
}

pub fn build_escape_grid(inst: &RepInstance) -> EscapeGrid {
    let mut xs = Vec::with_capacity(2 * inst.rects.len() + 2);
    let mut ys = Vec::with_capacity(2 * inst.rects.len() + 2);
    xs.extend([0, inst.boundary.width]);
    ys.extend([0, inst.boundary.height]);
    for r in &inst.rects {
        xs.extend([r.x1, r.x2]);
        ys.extend([r.y1, r.y2]);
    }
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    EscapeGrid { xs, ys }
}

impl EscapeGrid {
    pub fn columns(&self) -> usize {
        self.xs.len() - 1
    }

    pub fn rows(&self) -> usize {
        self.ys.len() - 1
    }

    pub fn cell_count(&self) -> usize {
        self.columns() * self.rows()
    }

    /// Column indices of the cells lying inside `[x1, x2]`. Both ends must be
    /// grid lines.
    pub fn column_span(&self, x1: i64, x2: i64) -> Range<usize> {
        line_index(&self.xs, x1)..line_index(&self.xs, x2)
    }

    pub fn row_span(&self, y1: i64, y2: i64) -> Range<usize> {
        line_index(&self.ys, y1)..line_index(&self.ys, y2)
    }

    /// Cell index ranges covered by a rectangle whose edges are grid lines.
    pub fn cell_span(&self, r: &Rect) -> (Range<usize>, Range<usize>) {
        (self.column_span(r.x1, r.x2), self.row_span(r.y1, r.y2))
    }

    /// Twice the center of cell `(i, j)`, which keeps it integral.
    pub fn doubled_center(&self, i: usize, j: usize) -> (i64, i64) {
        (self.xs[i] + self.xs[i + 1], self.ys[j] + self.ys[j + 1])
    }

    /// Adds the midpoint line of every cell with an even-width gap. Used to
    /// check that density does not depend on grid resolution.
    pub fn refined(&self) -> EscapeGrid {
        fn refine(v: &[i64]) -> Vec<i64> {
            let mut out = Vec::with_capacity(2 * v.len());
            for w in v.windows(2) {
                out.push(w[0]);
                if (w[1] - w[0]) % 2 == 0 && w[1] - w[0] >= 2 {
                    out.push((w[0] + w[1]) / 2);
                }
            }
            out.extend(v.last());
            out
        }
        EscapeGrid {
            xs: refine(&self.xs),
            ys: refine(&self.ys),
        }
    }
}

fn line_index(lines: &[i64], v: i64) -> usize {
    lines
        .binary_search(&v)
        .unwrap_or_else(|_| panic!("coordinate {v} is not a grid line"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Boundary;

    #[test]
    fn empty_instance_has_one_cell() {
        let inst = RepInstance::new(Boundary::new(7, 5), vec![], false).unwrap();
        let g = build_escape_grid(&inst);
        assert_eq!(g.xs, vec![0, 7]);
        assert_eq!(g.ys, vec![0, 5]);
        assert_eq!(g.cell_count(), 1);
    }

    #[test]
    fn single_rect_grid() {
        let inst =
            RepInstance::new(Boundary::new(10, 10), vec![Rect::new(2, 4, 3, 5)], false).unwrap();
        let g = build_escape_grid(&inst);
        assert_eq!(g.xs, vec![0, 2, 3, 10]);
        assert_eq!(g.ys, vec![0, 4, 5, 10]);
        assert_eq!(g.cell_count(), 9);
        assert_eq!(g.cell_span(&Rect::new(2, 4, 3, 5)), (1..2, 1..2));
        assert_eq!(g.cell_span(&Rect::new(0, 4, 3, 5)), (0..2, 1..2));
    }
}
