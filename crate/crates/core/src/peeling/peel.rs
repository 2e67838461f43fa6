use serde::Serialize;

use super::{build_escape_dags, EscapeDag};
use crate::error::{EscapeError, Result};
use crate::exec::Exec;
use crate::geometry::{compute_density_rep, DensityReport, Direction, EscapeAssignment, RepInstance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelingResult {
    /// `levels[t]` holds the rectangles removed in round `t + 1`, ascending.
    pub levels: Vec<Vec<usize>>,
    /// 1-based level of each rectangle.
    pub level_of: Vec<usize>,
    pub assignment: EscapeAssignment,
    pub rho: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeelingSolution {
    pub assignment: EscapeAssignment,
    pub report: DensityReport,
    pub peeling: PeelingResult,
}

pub fn peel(inst: &RepInstance) -> Result<PeelingResult> {
    peel_with(inst, Exec::default())
}

pub fn peel_with(inst: &RepInstance, exec: Exec) -> Result<PeelingResult> {
    let dags = build_escape_dags(inst, exec)?;
    for dag in &dags {
        dag.topological_order()?;
    }
    peel_dags(inst.len(), &dags)
}

/// Peels with all removals of a round applied together at the end of the
/// round. A rectangle with no remaining blocker in some direction is always
/// removed in the next round, so the frontier is just the set of rectangles
/// whose count hit zero since the previous round.
pub fn peel_dags(n: usize, dags: &[EscapeDag; 4]) -> Result<PeelingResult> {
    let mut indeg: Vec<Vec<u32>> = dags
        .iter()
        .map(|d| (0..n).map(|i| d.indegree(i)).collect())
        .collect();
    let mut removed = vec![false; n];
    let mut queued = vec![false; n];
    let mut frontier: Vec<usize> = (0..n)
        .filter(|&i| indeg.iter().any(|c| c[i] == 0))
        .collect();
    for &i in &frontier {
        queued[i] = true;
    }

    let mut levels = Vec::new();
    let mut level_of = vec![0; n];
    let mut dirs = vec![Direction::Left; n];
    let mut left = n;
    while left > 0 {
        if frontier.is_empty() {
            return Err(EscapeError::NoProgress { remaining: left });
        }
        frontier.sort_unstable();
        let level = std::mem::take(&mut frontier);
        for &i in &level {
            let d = (0..4).find(|&d| indeg[d][i] == 0).expect("frontier member is free");
            dirs[i] = Direction::from_index(d);
            level_of[i] = levels.len() + 1;
            removed[i] = true;
        }
        for &i in &level {
            for (d, dag) in dags.iter().enumerate() {
                for &t in dag.successors(i) {
                    let t = t as usize;
                    indeg[d][t] -= 1;
                    if indeg[d][t] == 0 && !removed[t] && !queued[t] {
                        queued[t] = true;
                        frontier.push(t);
                    }
                }
            }
        }
        left -= level.len();
        levels.push(level);
    }
    Ok(PeelingResult {
        rho: levels.len(),
        levels,
        level_of,
        assignment: EscapeAssignment::new(dirs),
    })
}

pub fn solve_peeling(inst: &RepInstance) -> Result<PeelingSolution> {
    solve_peeling_with(inst, Exec::default())
}

/// Peels, evaluates the assignment and checks `density <= 2 * rho`.
pub fn solve_peeling_with(inst: &RepInstance, exec: Exec) -> Result<PeelingSolution> {
    let peeling = peel_with(inst, exec)?;
    let report = compute_density_rep(inst, &peeling.assignment)?;
    if report.density > 2 * peeling.rho as u64 {
        return Err(EscapeError::BoundViolation(format!(
            "peeling density {} exceeds 2 * rho = {}",
            report.density,
            2 * peeling.rho
        )));
    }
    Ok(PeelingSolution {
        assignment: peeling.assignment.clone(),
        report,
        peeling,
    })
}

/// Density of each level's rectangles routed on their own.
pub fn level_densities(inst: &RepInstance, peeling: &PeelingResult) -> Result<Vec<u64>> {
    peeling
        .levels
        .iter()
        .map(|level| {
            let sub = RepInstance::new(
                inst.boundary,
                level.iter().map(|&i| inst.rects[i]).collect(),
                true,
            )?;
            let dirs = level.iter().map(|&i| peeling.assignment.get(i)).collect();
            Ok(compute_density_rep(&sub, &EscapeAssignment::new(dirs))?.density)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Boundary, Rect};

    fn unit_squares(side: i64, cells: &[(i64, i64)]) -> RepInstance {
        RepInstance::new(
            Boundary::new(side, side),
            cells.iter().map(|&(x, y)| Rect::new(x, y, x + 1, y + 1)).collect(),
            true,
        )
        .unwrap()
    }

    fn ring(lo: i64, hi: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for x in lo..=hi {
            for y in lo..=hi {
                if x == lo || x == hi || y == lo || y == hi {
                    out.push((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn single_rect() {
        let inst = unit_squares(4, &[(1, 1)]);
        let p = peel(&inst).unwrap();
        assert_eq!(p.rho, 1);
        assert_eq!(p.assignment.as_slice(), &[Direction::Left]);
        assert_eq!(solve_peeling(&inst).unwrap().report.density, 1);
    }

    #[test]
    fn two_rings() {
        // eight outer squares shield a 2x2 arrangement of inner squares
        let outer = [(1, 3), (1, 5), (7, 3), (7, 5), (3, 1), (5, 1), (3, 7), (5, 7)];
        let inner = [(3, 3), (5, 3), (3, 5), (5, 5)];
        let cells: Vec<_> = outer.iter().chain(inner.iter()).copied().collect();
        let inst = unit_squares(9, &cells);
        let p = peel(&inst).unwrap();
        assert_eq!(p.rho, 2);
        assert_eq!(p.levels, vec![(0..8).collect::<Vec<_>>(), (8..12).collect()]);
        let sol = solve_peeling(&inst).unwrap();
        assert!(sol.report.density <= 4);
    }

    #[test]
    fn open_row_is_one_level() {
        let inst = unit_squares(10, &[(1, 5), (3, 5), (5, 5), (7, 5)]);
        let p = peel(&inst).unwrap();
        assert_eq!(p.rho, 1);
        assert_eq!(p.levels, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut cells = ring(1, 5);
        cells.extend(ring(2, 4));
        cells.push((3, 3));
        let spaced: Vec<_> = cells.iter().map(|&(x, y)| (2 * x, 2 * y)).collect();
        let inst = unit_squares(13, &spaced);
        let a = peel_with(&inst, Exec::Sequential).unwrap();
        let b = peel_with(&inst, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rho, 3);
        assert!(level_densities(&inst, &a).unwrap().iter().all(|&d| d <= 2));
    }

    #[test]
    fn no_progress_is_reported() {
        let dag = EscapeDag::from_edges(Direction::Left, 2, vec![(0, 1), (1, 0)]);
        let dags = [dag.clone(), dag.clone(), dag.clone(), dag];
        assert!(matches!(
            peel_dags(2, &dags),
            Err(EscapeError::NoProgress { remaining: 2 })
        ));
    }
}
