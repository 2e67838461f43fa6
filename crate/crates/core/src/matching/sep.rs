use std::collections::BTreeMap;

use serde::Serialize;

use super::{max_matching, BipartiteGraph};
use crate::error::{EscapeError, Result};
use crate::geometry::{Boundary, Direction, EscapeAssignment, LatticePoint, SepInstance};

/// Projections of `p` onto the four boundary edges in canonical direction
/// order. A point on an edge is its own projection in that direction.
pub fn projections(p: LatticePoint, b: &Boundary) -> [(Direction, LatticePoint); 4] {
    Direction::ALL.map(|d| (d, b.project(p, d)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ScanMode {
    /// Try `k_B = 1, 2, ...` in turn.
    #[default]
    Linear,
    /// Binary search over `1..=n`, valid because feasibility is monotone.
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedPair {
    pub point: usize,
    pub target: LatticePoint,
    pub copy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    pub k_b: usize,
    pub matching: Vec<MatchedPair>,
    pub assignment: EscapeAssignment,
}

/// Attempts a left-perfect matching with `k` copies per boundary point.
pub fn feasible_at(inst: &SepInstance, k: usize) -> Option<MatchingResult> {
    let b = inst.boundary;
    let mut targets: BTreeMap<LatticePoint, usize> = BTreeMap::new();
    for &p in &inst.points {
        for (_, q) in projections(p, &b) {
            targets.insert(q, 0);
        }
    }
    for (slot, id) in targets.values_mut().enumerate() {
        *id = slot;
    }
    let by_id: Vec<LatticePoint> = targets.keys().copied().collect();

    let mut g = BipartiteGraph::new(inst.len(), by_id.len() * k);
    for (i, &p) in inst.points.iter().enumerate() {
        let mut seen = Vec::with_capacity(4);
        for (_, q) in projections(p, &b) {
            if seen.contains(&q) {
                continue;
            }
            seen.push(q);
            let base = targets[&q] * k;
            for c in 0..k {
                g.add_edge(i, base + c);
            }
        }
    }
    let m = max_matching(&g);
    if !m.is_left_perfect() {
        return None;
    }

    let mut matching = Vec::with_capacity(inst.len());
    let mut dirs = Vec::with_capacity(inst.len());
    for (i, v) in m.pairs() {
        let target = by_id[v / k];
        let (dir, _) = projections(inst.points[i], &b)
            .into_iter()
            .find(|&(_, q)| q == target)
            .expect("matched to one of its own projections");
        dirs.push(dir);
        matching.push(MatchedPair {
            point: i,
            target,
            copy: v % k,
        });
    }
    Some(MatchingResult {
        k_b: k,
        matching,
        assignment: EscapeAssignment::new(dirs),
    })
}

pub fn solve_sep(inst: &SepInstance) -> Result<MatchingResult> {
    solve_sep_with(inst, ScanMode::Linear)
}

/// Smallest `k_B` admitting a left-perfect matching, with the routing read
/// off that matching.
pub fn solve_sep_with(inst: &SepInstance, mode: ScanMode) -> Result<MatchingResult> {
    if inst.is_empty() {
        return Err(EscapeError::EmptyInstance);
    }
    let n = inst.len();
    match mode {
        ScanMode::Linear => {
            for k in 1..=n {
                if let Some(r) = feasible_at(inst, k) {
                    return Ok(r);
                }
            }
            unreachable!("k_B = n is always feasible")
        }
        ScanMode::Binary => {
            let (mut lo, mut hi) = (1, n);
            let mut best = feasible_at(inst, n).expect("k_B = n is always feasible");
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                match feasible_at(inst, mid) {
                    Some(r) => {
                        best = r;
                        hi = mid;
                    }
                    None => lo = mid + 1,
                }
            }
            if best.k_b != lo {
                best = feasible_at(inst, lo).expect("monotone feasibility");
            }
            Ok(best)
        }
    }
}
