//! Seeded instance generators.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{EscapeError, Result};
use crate::geometry::{Boundary, Instance, LatticePoint, Rect, RepInstance, SepInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rep,
    Sep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Random,
    Rings,
    Staircase,
    Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: Kind,
    pub n: usize,
    pub seed: u64,
    pub disjoint: bool,
    /// Box size for `random` and `rows`; the nested families size their own box.
    pub width: i64,
    pub height: i64,
    pub family: Family,
}

impl GenSpec {
    pub fn random_rep(n: usize, side: i64, seed: u64, disjoint: bool) -> Self {
        GenSpec { kind: Kind::Rep, n, seed, disjoint, width: side, height: side, family: Family::Random }
    }

    pub fn random_sep(n: usize, side: i64, seed: u64, disjoint: bool) -> Self {
        GenSpec { kind: Kind::Sep, n, seed, disjoint, width: side, height: side, family: Family::Random }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Rep => "rep",
            Kind::Sep => "sep",
        })
    }
}

impl FromStr for Kind {
    type Err = EscapeError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rep" => Ok(Kind::Rep),
            "sep" => Ok(Kind::Sep),
            _ => Err(EscapeError::Generator(format!("unknown kind {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Random => "random",
            Family::Rings => "rings",
            Family::Staircase => "staircase",
            Family::Rows => "rows",
        })
    }
}

impl FromStr for Family {
    type Err = EscapeError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Family::Random),
            "rings" => Ok(Family::Rings),
            "staircase" => Ok(Family::Staircase),
            "rows" => Ok(Family::Rows),
            _ => Err(EscapeError::Generator(format!("unknown family {s:?}"))),
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match (spec.kind, spec.family) {
        (Kind::Rep, Family::Random) => random_rep(spec, &mut rng).map(Instance::Rep),
        (Kind::Sep, Family::Random) => random_sep(spec, &mut rng).map(Instance::Sep),
        (Kind::Sep, Family::Rows) => rows(spec, &mut rng).map(Instance::Sep),
        (Kind::Rep, Family::Rings) => rings(spec.n).map(Instance::Rep),
        (Kind::Rep, Family::Staircase) => staircase(spec.n).map(Instance::Rep),
        (kind, family) => Err(EscapeError::Generator(format!(
            "family {family} does not produce {kind} instances"
        ))),
    }
}

fn boundary(spec: &GenSpec) -> Result<Boundary> {
    let b = Boundary::new(spec.width, spec.height);
    if !b.is_valid() {
        return Err(EscapeError::InvalidBoundary { width: spec.width, height: spec.height });
    }
    Ok(b)
}

/// Largest side length drawn for random rectangles in this box.
pub fn max_side(b: &Boundary) -> i64 {
    (b.width.min(b.height) / 4).clamp(1, 8)
}

fn random_rect(rng: &mut ChaCha8Rng, b: &Boundary, side: i64) -> Rect {
    let w = rng.gen_range(1..=side.min(b.width));
    let h = rng.gen_range(1..=side.min(b.height));
    let x = rng.gen_range(0..=b.width - w);
    let y = rng.gen_range(0..=b.height - h);
    Rect::new(x, y, x + w, y + h)
}

fn random_rep(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<RepInstance> {
    let b = boundary(spec)?;
    let side = max_side(&b);
    if !spec.disjoint {
        let rects = (0..spec.n).map(|_| random_rect(rng, &b, side)).collect();
        return RepInstance::new(b, rects, false);
    }

    // bucket size exceeds any side, so a rectangle can only touch rectangles
    // whose lower-left corner lies in a neighbouring bucket
    let cell = side + 1;
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let mut rects: Vec<Rect> = Vec::with_capacity(spec.n);
    let budget = 200 * spec.n + 1000;
    let mut attempts = 0;
    while rects.len() < spec.n {
        attempts += 1;
        if attempts > budget {
            return Err(EscapeError::Generator(format!(
                "placed only {} of {} disjoint rectangles in a {}x{} box",
                rects.len(),
                spec.n,
                b.width,
                b.height
            )));
        }
        let r = random_rect(rng, &b, side);
        let (bx, by) = (r.x1 / cell, r.y1 / cell);
        let clash = (bx - 1..=bx + 1).any(|i| {
            (by - 1..=by + 1).any(|j| {
                buckets
                    .get(&(i, j))
                    .is_some_and(|ids| ids.iter().any(|&k| rects[k].intersects(&r)))
            })
        });
        if !clash {
            buckets.entry((bx, by)).or_default().push(rects.len());
            rects.push(r);
        }
    }
    RepInstance::new(b, rects, true)
}

fn random_sep(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<SepInstance> {
    let b = boundary(spec)?;
    if b.width < 2 || b.height < 2 {
        return Err(EscapeError::Generator("box has no interior lattice points".into()));
    }
    let slots = ((b.width - 1) * (b.height - 1)) as usize;
    let draw = |rng: &mut ChaCha8Rng| LatticePoint {
        x: rng.gen_range(1..b.width),
        y: rng.gen_range(1..b.height),
    };
    let points = if spec.disjoint {
        if spec.n > slots {
            return Err(EscapeError::Generator(format!(
                "{} distinct interior points do not fit in a {}x{} box",
                spec.n, b.width, b.height
            )));
        }
        let mut seen = HashSet::new();
        let mut pts = Vec::with_capacity(spec.n);
        while pts.len() < spec.n {
            let p = draw(rng);
            if seen.insert(p) {
                pts.push(p);
            }
        }
        pts
    } else {
        (0..spec.n).map(|_| draw(rng)).collect()
    };
    SepInstance::new(b, points)
}

fn rows(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<SepInstance> {
    let b = boundary(spec)?;
    let free = (b.width - 1).max(0) as usize;
    if b.height < 2 || spec.n > free {
        return Err(EscapeError::Generator(format!(
            "{} collinear interior points do not fit in a {}x{} box",
            spec.n, b.width, b.height
        )));
    }
    let y = b.height / 2;
    let mut xs: Vec<i64> = sample(rng, free, spec.n).into_iter().map(|i| i as i64 + 1).collect();
    xs.sort_unstable();
    SepInstance::new(b, xs.into_iter().map(|x| LatticePoint { x, y }).collect())
}

const MAX_DEPTH: usize = 30;

/// Nested rings: each region is split into 3x3 slots, the eight outer slots
/// hold one rectangle each and the centre slot holds the next region. The
/// last region takes the leftover rectangles in row-major slot order.
/// Ring `t` peels at level `t`.
fn rings(n: usize) -> Result<RepInstance> {
    let depth = n.div_ceil(8).max(1);
    if depth > MAX_DEPTH {
        return Err(EscapeError::Generator(format!("rings family supports n <= {}", 8 * MAX_DEPTH)));
    }
    let outer = 3i64.pow(depth as u32 + 1);
    let b = Boundary::new(outer + 2, outer + 2);
    let mut rects = Vec::with_capacity(n);
    let (mut ox, mut oy, mut len) = (1i64, 1i64, outer);
    for t in 0..depth {
        let s = len / 3;
        let slot = |i: i64, j: i64| Rect::new(ox + i * s + 1, oy + j * s + 1, ox + (i + 1) * s - 1, oy + (j + 1) * s - 1);
        let take = (n - rects.len()).min(8);
        if t + 1 < depth || take == 8 {
            for (i, j) in [(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2)] {
                rects.push(slot(i, j));
            }
        } else {
            for k in 0..take as i64 {
                rects.push(slot(k % 3, k / 3));
            }
        }
        ox += s;
        oy += s;
        len = s;
    }
    RepInstance::new(b, rects, true)
}

/// Nested pinwheel frames three units apart. Each frame's four bars fence in
/// everything inside it, so frame `t` peels at level `t`.
fn staircase(n: usize) -> Result<RepInstance> {
    let depth = n.div_ceil(4).max(1) as i64;
    let size = 6 * depth;
    let b = Boundary::new(size, size);
    let mut rects = Vec::with_capacity(n);
    'frames: for t in 0..depth {
        let (a, z) = (3 * t, size - 3 * t);
        for r in [
            Rect::new(a, a, z - 2, a + 1),
            Rect::new(z - 1, a, z, z - 2),
            Rect::new(a + 2, z - 1, z, z),
            Rect::new(a, a + 2, a + 1, z),
        ] {
            if rects.len() == n {
                break 'frames;
            }
            rects.push(r);
        }
    }
    RepInstance::new(b, rects, true)
}

/// `n` squares of side `n` shifted along the diagonal, all sharing the cell
/// at the centre. Under uniform weights every square loads that cell with 1,
/// so the fractional peak load is exactly `n`.
pub fn diagonal_stack(n: usize) -> Result<RepInstance> {
    let n = n as i64;
    let b = Boundary::new((2 * n).max(1), (2 * n).max(1));
    RepInstance::new(b, (0..n).map(|i| Rect::new(i, i, i + n, i + n)).collect(), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::check_disjoint_rep;
    use crate::peeling::peel;

    fn rep(inst: Instance) -> RepInstance {
        match inst {
            Instance::Rep(r) => r,
            Instance::Sep(_) => panic!("expected REP"),
        }
    }

    fn family(kind: Kind, family: Family, n: usize) -> GenSpec {
        GenSpec { kind, n, seed: 1, disjoint: true, width: 20, height: 20, family }
    }

    #[test]
    fn rings_of_twelve_have_two_levels() {
        let inst = rep(generate(&family(Kind::Rep, Family::Rings, 12)).unwrap());
        assert_eq!(inst.len(), 12);
        assert!(check_disjoint_rep(&inst.rects).is_none());
        let p = peel(&inst).unwrap();
        assert_eq!(p.rho, 2);
        assert!(p.level_of[8..].iter().all(|&l| l == 2));
    }

    #[test]
    fn ring_depth_matches_levels() {
        for n in [1, 7, 8, 9, 16, 20, 40] {
            let inst = rep(generate(&family(Kind::Rep, Family::Rings, n)).unwrap());
            assert_eq!(inst.len(), n);
            assert_eq!(peel(&inst).unwrap().rho, n.div_ceil(8), "n={n}");
        }
    }

    #[test]
    fn staircase_depth_matches_levels() {
        for d in [1usize, 2, 5, 10] {
            let inst = rep(generate(&family(Kind::Rep, Family::Staircase, 4 * d)).unwrap());
            assert_eq!(peel(&inst).unwrap().rho, d);
        }
    }

    #[test]
    fn rows_are_distinct_and_collinear() {
        let Instance::Sep(s) = generate(&family(Kind::Sep, Family::Rows, 5)).unwrap() else {
            panic!()
        };
        assert_eq!(s.len(), 5);
        assert!(s.is_disjoint());
        assert!(s.points.iter().all(|p| p.y == s.points[0].y));
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        for spec in [
            GenSpec::random_rep(30, 40, 9, true),
            GenSpec::random_rep(30, 40, 9, false),
            GenSpec::random_sep(30, 10, 9, false),
        ] {
            assert_eq!(generate(&spec).unwrap().to_json(), generate(&spec).unwrap().to_json());
        }
        let a = generate(&GenSpec::random_rep(30, 40, 1, true)).unwrap();
        let b = generate(&GenSpec::random_rep(30, 40, 2, true)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn random_disjoint_validates() {
        for seed in 0..20 {
            let inst = rep(generate(&GenSpec::random_rep(50, 60, seed, true)).unwrap());
            assert!(check_disjoint_rep(&inst.rects).is_none());
        }
    }

    #[test]
    fn diagonal_stack_has_peak_load_n() {
        use crate::lp::FractionalSolution;
        use num_bigint::BigInt;
        use num_rational::BigRational;
        for n in [1, 2, 5, 12] {
            let inst = diagonal_stack(n).unwrap();
            let f = FractionalSolution::uniform(&inst).unwrap();
            assert_eq!(f.k_f, BigRational::from_integer(BigInt::from(n)));
        }
    }

    #[test]
    fn infeasible_requests_fail() {
        assert!(generate(&GenSpec::random_rep(500, 6, 0, true)).is_err());
        assert!(generate(&GenSpec::random_sep(10, 3, 0, true)).is_err());
        assert!(generate(&family(Kind::Sep, Family::Rings, 4)).is_err());
        assert!(generate(&family(Kind::Sep, Family::Rows, 40)).is_err());
    }
}
