use serde::{Deserialize, Serialize};

use super::Direction;

/// The bounding box `[0, width] x [0, height]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Boundary {
    pub width: i64,
    pub height: i64,
}

impl Boundary {
    pub fn new(width: i64, height: i64) -> Self {
        Boundary { width, height }
    }

    pub fn is_valid(&self) -> bool {
        self.width >= 1 && self.height >= 1
    }

    pub fn contains_rect(&self, r: &Rect) -> bool {
        0 <= r.x1 && r.x1 < r.x2 && r.x2 <= self.width && 0 <= r.y1 && r.y1 < r.y2 && r.y2 <= self.height
    }

    pub fn contains_point(&self, p: LatticePoint) -> bool {
        (0..=self.width).contains(&p.x) && (0..=self.height).contains(&p.y)
    }

    pub fn on_edge(&self, p: LatticePoint) -> bool {
        p.x == 0 || p.y == 0 || p.x == self.width || p.y == self.height
    }

    /// Perpendicular projection of `p` onto the boundary edge facing `dir`.
    pub fn project(&self, p: LatticePoint, dir: Direction) -> LatticePoint {
        match dir {
            Direction::Left => LatticePoint::new(0, p.y),
            Direction::Right => LatticePoint::new(self.width, p.y),
            Direction::Down => LatticePoint::new(p.x, 0),
            Direction::Up => LatticePoint::new(p.x, self.height),
        }
    }
}

/// Closed axis-aligned rectangle `[x1, x2] x [y1, y2]` with integer corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect {
    pub x1: i64,
    pub y1: i64,
    pub x2: i64,
    pub y2: i64,
}

impl Rect {
    pub const fn new(x1: i64, y1: i64, x2: i64, y2: i64) -> Self {
        Rect { x1, y1, x2, y2 }
    }

    pub fn width(&self) -> i64 {
        self.x2 - self.x1
    }

    pub fn height(&self) -> i64 {
        self.y2 - self.y1
    }

    pub fn contains(&self, other: &Rect) -> bool {
        self.x1 <= other.x1 && other.x2 <= self.x2 && self.y1 <= other.y1 && other.y2 <= self.y2
    }

    /// Closed-set intersection: touching edges or corners count.
    pub fn intersects(&self, other: &Rect) -> bool {
        self.x1 <= other.x2 && other.x1 <= self.x2 && self.y1 <= other.y2 && other.y1 <= self.y2
    }
}

/// A point of the integer lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }
}

/// Extends the `dir` side of `r` to the boundary.
pub fn escape_path(r: &Rect, dir: Direction, b: &Boundary) -> Rect {
    let mut p = *r;
    match dir {
        Direction::Left => p.x1 = 0,
        Direction::Right => p.x2 = b.width,
        Direction::Down => p.y1 = 0,
        Direction::Up => p.y2 = b.height,
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const B: Boundary = Boundary {
        width: 10,
        height: 10,
    };

    #[test]
    fn escape_path_examples() {
        let r = Rect::new(2, 2, 3, 3);
        assert_eq!(escape_path(&r, Direction::Up, &B), Rect::new(2, 2, 3, 10));
        assert_eq!(escape_path(&r, Direction::Right, &B), Rect::new(2, 2, 10, 3));
        let edge = Rect::new(0, 4, 1, 5);
        assert_eq!(escape_path(&edge, Direction::Left, &B), edge);
    }

    #[test]
    fn closed_intersection_counts_touching() {
        let a = Rect::new(0, 0, 2, 2);
        assert!(a.intersects(&Rect::new(2, 0, 4, 2)));
        assert!(a.intersects(&Rect::new(2, 2, 3, 3)));
        assert!(!a.intersects(&Rect::new(3, 0, 4, 2)));
    }

    #[test]
    fn projections() {
        let b = Boundary::new(6, 6);
        let p = LatticePoint::new(3, 2);
        let got: Vec<_> = Direction::ALL.iter().map(|&d| b.project(p, d)).collect();
        assert_eq!(
            got,
            vec![
                LatticePoint::new(0, 2),
                LatticePoint::new(6, 2),
                LatticePoint::new(3, 0),
                LatticePoint::new(3, 6)
            ]
        );
    }

    fn rect_in_box() -> impl Strategy<Value = Rect> {
        (0i64..10, 1i64..=10, 0i64..10, 1i64..=10).prop_filter_map("non-empty", |(a, b, c, d)| {
            (a < b && c < d).then(|| Rect::new(a, c, b, d))
        })
    }

    proptest! {
        #[test]
        fn escape_path_contains_and_is_idempotent(r in rect_in_box(), d in 0usize..4) {
            let dir = Direction::from_index(d);
            let p = escape_path(&r, dir, &B);
            prop_assert!(p.contains(&r));
            prop_assert!(B.contains_rect(&p));
            prop_assert_eq!(escape_path(&p, dir, &B), p);
            let touches = match dir {
                Direction::Left => p.x1 == 0,
                Direction::Right => p.x2 == B.width,
                Direction::Down => p.y1 == 0,
                Direction::Up => p.y2 == B.height,
            };
            prop_assert!(touches);
        }
    }
}
