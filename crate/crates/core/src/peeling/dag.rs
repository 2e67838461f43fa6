use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt::Write;

use super::IntervalIndex;
use crate::error::{EscapeError, Result};
use crate::exec::Exec;
use crate::geometry::{Direction, Rect, RepInstance};

/// Blocking relation for one direction: an edge `i -> j` means rectangle `i`
/// lies between `j` and the boundary in `direction` and their perpendicular
/// projections overlap in positive length, so `j` cannot escape that way
/// while `i` is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeDag {
    pub direction: Direction,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    indegree: Vec<u32>,
}

/// Extent of `r` along `dir` (growing toward the boundary) and across it.
fn oriented(r: &Rect, dir: Direction) -> ((i64, i64), (i64, i64)) {
    match dir {
        Direction::Up => ((r.y1, r.y2), (r.x1, r.x2)),
        Direction::Down => ((-r.y2, -r.y1), (r.x1, r.x2)),
        Direction::Right => ((r.x1, r.x2), (r.y1, r.y2)),
        Direction::Left => ((-r.x2, -r.x1), (r.y1, r.y2)),
    }
}

/// Builds `T_dir` for a disjoint instance.
///
/// Rectangles are swept from the `dir` boundary inward. A rectangle enters the
/// interval index once the sweep has passed its near edge, and when the sweep
/// reaches another rectangle's far edge the index reports all rectangles
/// beyond it with overlapping projections. `O(n log n + E log n)`.
pub fn build_escape_dag(inst: &RepInstance, dir: Direction) -> Result<EscapeDag> {
    inst.require_disjoint()?;
    Ok(sweep(&inst.rects, dir))
}

/// Builds the four DAGs, in canonical direction order.
pub fn build_escape_dags(inst: &RepInstance, exec: Exec) -> Result<[EscapeDag; 4]> {
    inst.require_disjoint()?;
    let dags = exec.map_range(4, |d| sweep(&inst.rects, Direction::from_index(d)));
    Ok(dags.try_into().expect("four directions"))
}

fn sweep(rects: &[Rect], dir: Direction) -> EscapeDag {
    let n = rects.len();
    let spans: Vec<_> = rects.iter().map(|r| oriented(r, dir)).collect();
    let perp: Vec<(i64, i64)> = spans.iter().map(|s| s.1).collect();
    let mut index = IntervalIndex::new(&perp);

    // descending position; at equal positions inserts precede queries
    let mut events: Vec<(Reverse<i64>, u8, usize)> = Vec::with_capacity(2 * n);
    for (i, ((lo, hi), _)) in spans.iter().enumerate() {
        events.push((Reverse(*lo), 0, i));
        events.push((Reverse(*hi), 1, i));
    }
    events.sort_unstable();

    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut found = Vec::new();
    for (_, kind, j) in events {
        if kind == 0 {
            index.activate(j);
        } else {
            found.clear();
            let (a, b) = perp[j];
            index.overlapping(a, b, &mut found);
            edges.extend(found.iter().map(|&i| (i as u32, j as u32)));
        }
    }
    EscapeDag::from_edges(dir, n, edges)
}

impl EscapeDag {
    pub fn from_edges(direction: Direction, n: usize, mut edges: Vec<(u32, u32)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut offsets = vec![0usize; n + 1];
        let mut indegree = vec![0u32; n];
        for &(s, t) in &edges {
            offsets[s as usize + 1] += 1;
            indegree[t as usize] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        EscapeDag {
            direction,
            offsets,
            targets: edges.into_iter().map(|(_, t)| t).collect(),
            indegree,
        }
    }

    pub fn node_count(&self) -> usize {
        self.indegree.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Rectangles blocked by `i`.
    pub fn successors(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn indegree(&self, i: usize) -> u32 {
        self.indegree[i]
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.node_count())
            .flat_map(|i| self.successors(i).iter().map(move |&t| (i, t as usize)))
            .collect()
    }

    /// Kahn's algorithm, smallest index first among ready nodes.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.node_count();
        let mut indeg = self.indegree.clone();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(i)) = ready.pop() {
            order.push(i);
            for &t in self.successors(i) {
                indeg[t as usize] -= 1;
                if indeg[t as usize] == 0 {
                    ready.push(Reverse(t as usize));
                }
            }
        }
        if order.len() != n {
            return Err(EscapeError::Cycle(self.direction));
        }
        Ok(order)
    }

    /// Edge list dump, one `blocker blocked` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# escape DAG {} nodes={} edges={}\n", self.direction, self.node_count(), self.edge_count());
        for (s, t) in self.edges() {
            let _ = writeln!(out, "{s} {t}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Boundary;

    fn inst(rects: &[(i64, i64, i64, i64)]) -> RepInstance {
        RepInstance::new(
            Boundary::new(20, 20),
            rects.iter().map(|&(a, b, c, d)| Rect::new(a, b, c, d)).collect(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn single_rect_has_no_edges() {
        let i = inst(&[(2, 2, 3, 3)]);
        for d in Direction::ALL {
            assert_eq!(build_escape_dag(&i, d).unwrap().edge_count(), 0);
        }
    }

    #[test]
    fn stacked_pair() {
        // 0 is the bottom rect, 1 sits above it with overlapping x-range
        let i = inst(&[(2, 2, 6, 3), (4, 5, 8, 6)]);
        assert_eq!(build_escape_dag(&i, Direction::Up).unwrap().edges(), vec![(1, 0)]);
        assert_eq!(build_escape_dag(&i, Direction::Down).unwrap().edges(), vec![(0, 1)]);
        assert!(build_escape_dag(&i, Direction::Left).unwrap().edges().is_empty());
        assert!(build_escape_dag(&i, Direction::Right).unwrap().edges().is_empty());
    }

    #[test]
    fn corner_contact_in_projection_does_not_block() {
        // x-ranges [2,4] and [4,6] share only the point 4
        let i = inst(&[(2, 2, 4, 3), (4, 5, 6, 6)]);
        assert_eq!(build_escape_dag(&i, Direction::Up).unwrap().edge_count(), 0);
    }

    #[test]
    fn blocking_is_transitive_not_just_visible() {
        let i = inst(&[(2, 0, 4, 1), (2, 3, 4, 4), (2, 6, 4, 7)]);
        let up = build_escape_dag(&i, Direction::Up).unwrap();
        assert_eq!(up.edges(), vec![(1, 0), (2, 0), (2, 1)]);
        assert_eq!(up.topological_order().unwrap(), vec![2, 1, 0]);
        assert!(up.to_edge_list().contains("2 0\n"));
    }

    #[test]
    fn rejects_non_disjoint() {
        let i = RepInstance::new(
            Boundary::new(10, 10),
            vec![Rect::new(0, 0, 3, 3), Rect::new(2, 2, 4, 4)],
            false,
        )
        .unwrap();
        assert!(matches!(
            build_escape_dag(&i, Direction::Up),
            Err(EscapeError::NotDisjoint { .. })
        ));
    }

    #[test]
    fn cycle_is_detected() {
        let dag = EscapeDag::from_edges(Direction::Up, 2, vec![(0, 1), (1, 0)]);
        assert!(matches!(dag.topological_order(), Err(EscapeError::Cycle(Direction::Up))));
    }
}
