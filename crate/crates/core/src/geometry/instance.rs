use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_disjoint_rep, Boundary, LatticePoint, Rect};
use crate::error::{EscapeError, Result};

/// Rectangles inside a bounding box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepInstance {
    pub boundary: Boundary,
    pub rects: Vec<Rect>,
    /// Declared property; checked by [`RepInstance::validate`].
    pub disjoint: bool,
}

/// Lattice points of the `(width+1) x (height+1)` grid. Repeated points encode
/// multiplicity; every copy is a separate element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SepInstance {
    pub boundary: Boundary,
    pub points: Vec<LatticePoint>,
}

impl RepInstance {
    pub fn new(boundary: Boundary, rects: Vec<Rect>, disjoint: bool) -> Result<Self> {
        let inst = RepInstance {
            boundary,
            rects,
            disjoint,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let b = self.boundary;
        if !b.is_valid() {
            return Err(EscapeError::InvalidBoundary {
                width: b.width,
                height: b.height,
            });
        }
        for (index, r) in self.rects.iter().enumerate() {
            if !b.contains_rect(r) {
                return Err(EscapeError::InvalidElement {
                    index,
                    width: b.width,
                    height: b.height,
                    detail: format!("rectangle {r:?} must satisfy 0 <= x1 < x2 <= W and 0 <= y1 < y2 <= H"),
                });
            }
        }
        if self.disjoint {
            if let Some((first, second)) = check_disjoint_rep(&self.rects) {
                return Err(EscapeError::NotDisjoint { first, second });
            }
        }
        Ok(())
    }

    /// Fails unless the rectangles are pairwise disjoint as closed sets.
    pub fn require_disjoint(&self) -> Result<()> {
        match check_disjoint_rep(&self.rects) {
            Some((first, second)) => Err(EscapeError::NotDisjoint { first, second }),
            None => Ok(()),
        }
    }
}

impl SepInstance {
    pub fn new(boundary: Boundary, points: Vec<LatticePoint>) -> Result<Self> {
        let inst = SepInstance { boundary, points };
        inst.validate()?;
        Ok(inst)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let b = self.boundary;
        if !b.is_valid() {
            return Err(EscapeError::InvalidBoundary {
                width: b.width,
                height: b.height,
            });
        }
        for (index, &p) in self.points.iter().enumerate() {
            if !b.contains_point(p) {
                return Err(EscapeError::InvalidElement {
                    index,
                    width: b.width,
                    height: b.height,
                    detail: format!("point ({}, {}) lies outside the grid", p.x, p.y),
                });
            }
        }
        Ok(())
    }

    pub fn multiplicities(&self) -> BTreeMap<LatticePoint, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.points {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn is_disjoint(&self) -> bool {
        super::check_disjoint_sep(self).is_none()
    }

    pub fn require_disjoint(&self) -> Result<()> {
        match super::check_disjoint_sep(self) {
            Some((first, second)) => Err(EscapeError::NotDisjoint { first, second }),
            None => Ok(()),
        }
    }

    /// True when no point lies on a boundary edge.
    pub fn is_interior(&self) -> bool {
        self.points.iter().all(|&p| !self.boundary.on_edge(p))
    }

    /// Embeds the points as pairwise disjoint unit squares: `(x, y)` becomes
    /// `[2x+1, 2x+2] x [2y+1, 2y+2]` in a `(2W+3) x (2H+3)` box.
    ///
    /// Blocking and density are preserved: two squares overlap in a
    /// projection exactly when the points share that row or column.
    pub fn as_unit_squares(&self) -> RepInstance {
        let boundary = Boundary::new(2 * self.boundary.width + 3, 2 * self.boundary.height + 3);
        let rects = self
            .points
            .iter()
            .map(|p| Rect::new(2 * p.x + 1, 2 * p.y + 1, 2 * p.x + 2, 2 * p.y + 2))
            .collect();
        RepInstance {
            boundary,
            rects,
            disjoint: self.is_disjoint(),
        }
    }
}

/// Either kind of instance, as stored in instance files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Rep(RepInstance),
    Sep(SepInstance),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum InstanceFile {
    Rep {
        boundary: Boundary,
        rectangles: Vec<Rect>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        disjoint: bool,
    },
    Sep {
        boundary: Boundary,
        points: Vec<[i64; 2]>,
    },
}

impl Instance {
    pub fn len(&self) -> usize {
        match self {
            Instance::Rep(r) => r.len(),
            Instance::Sep(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn boundary(&self) -> Boundary {
        match self {
            Instance::Rep(r) => r.boundary,
            Instance::Sep(s) => s.boundary,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        let inst = match file {
            InstanceFile::Rep {
                boundary,
                rectangles,
                disjoint,
            } => Instance::Rep(RepInstance::new(boundary, rectangles, disjoint)?),
            InstanceFile::Sep { boundary, points } => Instance::Sep(SepInstance::new(
                boundary,
                points.into_iter().map(|[x, y]| LatticePoint::new(x, y)).collect(),
            )?),
        };
        Ok(inst)
    }

    /// Canonical serialization: pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let file = match self {
            Instance::Rep(r) => InstanceFile::Rep {
                boundary: r.boundary,
                rectangles: r.rects.clone(),
                disjoint: r.disjoint,
            },
            Instance::Sep(s) => InstanceFile::Sep {
                boundary: s.boundary,
                points: s.points.iter().map(|p| [p.x, p.y]).collect(),
            },
        };
        let mut out = serde_json::to_string_pretty(&file).expect("instance serializes");
        out.push('\n');
        out
    }
}

impl From<RepInstance> for Instance {
    fn from(r: RepInstance) -> Self {
        Instance::Rep(r)
    }
}

impl From<SepInstance> for Instance {
    fn from(s: SepInstance) -> Self {
        Instance::Sep(s)
    }
}
