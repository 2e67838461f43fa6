use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the four escape directions.
///
/// The derived order (left, right, down, up) is the canonical order used for
/// every tie-break in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
    Down,
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Left,
        Direction::Right,
        Direction::Down,
        Direction::Up,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Direction {
        Self::ALL[i]
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::Down => Direction::Up,
            Direction::Up => Direction::Down,
        }
    }

    /// Axis the escape path runs along.
    pub fn axis(self) -> Axis {
        match self {
            Direction::Left | Direction::Right => Axis::Horizontal,
            Direction::Down | Direction::Up => Axis::Vertical,
        }
    }

    /// The two directions perpendicular to this one, in canonical order.
    pub fn perpendicular(self) -> [Direction; 2] {
        match self.axis() {
            Axis::Horizontal => [Direction::Down, Direction::Up],
            Axis::Vertical => [Direction::Left, Direction::Right],
        }
    }

    /// Single-letter code used in LP variable names and fractional files.
    pub fn code(self) -> char {
        match self {
            Direction::Left => 'l',
            Direction::Right => 'r',
            Direction::Down => 'd',
            Direction::Up => 'u',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Left => "left",
            Direction::Right => "right",
            Direction::Down => "down",
            Direction::Up => "up",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "l" | "left" => Ok(Direction::Left),
            "r" | "right" => Ok(Direction::Right),
            "d" | "down" => Ok(Direction::Down),
            "u" | "up" => Ok(Direction::Up),
            other => Err(format!("unknown direction `{other}`")),
        }
    }
}

/// One direction per instance element, index-aligned with the instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EscapeAssignment(pub Vec<Direction>);

impl EscapeAssignment {
    pub fn new(dirs: Vec<Direction>) -> Self {
        EscapeAssignment(dirs)
    }

    pub fn uniform(n: usize, dir: Direction) -> Self {
        EscapeAssignment(vec![dir; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Direction] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Direction {
        self.0[i]
    }
}

impl From<Vec<Direction>> for EscapeAssignment {
    fn from(dirs: Vec<Direction>) -> Self {
        EscapeAssignment(dirs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_is_an_involution() {
        for d in Direction::ALL {
            assert_eq!(d.opposite().opposite(), d);
            assert_ne!(d.opposite(), d);
            assert_eq!(d.opposite().axis(), d.axis());
            for p in d.perpendicular() {
                assert_ne!(p.axis(), d.axis());
            }
        }
    }

    #[test]
    fn canonical_order() {
        let mut v = vec![Direction::Up, Direction::Down, Direction::Right, Direction::Left];
        v.sort();
        assert_eq!(v, Direction::ALL.to_vec());
        for (i, d) in Direction::ALL.iter().enumerate() {
            assert_eq!(d.index(), i);
            assert_eq!(Direction::from_index(i), *d);
        }
    }

    #[test]
    fn parses_codes_and_names() {
        for d in Direction::ALL {
            assert_eq!(d.code().to_string().parse::<Direction>().unwrap(), d);
            assert_eq!(d.name().parse::<Direction>().unwrap(), d);
        }
        assert!("north".parse::<Direction>().is_err());
    }
}
