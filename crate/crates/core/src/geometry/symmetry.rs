//! The eight symmetries of the bounding box, applied to instances and
//! assignments. Used to check that solvers do not depend on orientation.

use super::{Boundary, Direction, LatticePoint, Rect, RepInstance, SepInstance};

/// `rotations` quarter turns counter-clockwise, preceded by a mirror in the
/// vertical axis when `mirror` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub mirror: bool,
    pub rotations: u8,
}

impl Symmetry {
    pub fn all() -> impl Iterator<Item = Symmetry> {
        [false, true]
            .into_iter()
            .flat_map(|mirror| (0..4).map(move |rotations| Symmetry { mirror, rotations }))
    }

    pub fn boundary(self, b: Boundary) -> Boundary {
        if self.rotations % 2 == 1 {
            Boundary::new(b.height, b.width)
        } else {
            b
        }
    }

    /// Maps a point of `[0,w] x [0,h]` into the transformed box.
    pub fn point(self, b: Boundary, x: i64, y: i64) -> (i64, i64) {
        let (mut x, mut y) = if self.mirror { (b.width - x, y) } else { (x, y) };
        let (mut w, mut h) = (b.width, b.height);
        for _ in 0..self.rotations {
            // (x, y) -> (h - y, x) in a w x h box gives an h x w box
            (x, y) = (h - y, x);
            (w, h) = (h, w);
        }
        let _ = (w, h);
        (x, y)
    }

    pub fn direction(self, d: Direction) -> Direction {
        let mut d = if self.mirror {
            match d {
                Direction::Left => Direction::Right,
                Direction::Right => Direction::Left,
                other => other,
            }
        } else {
            d
        };
        for _ in 0..self.rotations {
            d = match d {
                Direction::Right => Direction::Up,
                Direction::Up => Direction::Left,
                Direction::Left => Direction::Down,
                Direction::Down => Direction::Right,
            };
        }
        d
    }

    pub fn rect(self, b: Boundary, r: &Rect) -> Rect {
        let (ax, ay) = self.point(b, r.x1, r.y1);
        let (bx, by) = self.point(b, r.x2, r.y2);
        Rect::new(ax.min(bx), ay.min(by), ax.max(bx), ay.max(by))
    }

    pub fn rep(self, inst: &RepInstance) -> RepInstance {
        RepInstance {
            boundary: self.boundary(inst.boundary),
            rects: inst.rects.iter().map(|r| self.rect(inst.boundary, r)).collect(),
            disjoint: inst.disjoint,
        }
    }

    pub fn sep(self, inst: &SepInstance) -> SepInstance {
        SepInstance {
            boundary: self.boundary(inst.boundary),
            points: inst
                .points
                .iter()
                .map(|p| {
                    let (x, y) = self.point(inst.boundary, p.x, p.y);
                    LatticePoint::new(x, y)
                })
                .collect(),
        }
    }
}
