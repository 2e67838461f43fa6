//! Exhaustive solvers that supply ground truth for the approximation tests.
//!
//! All `4^n` assignments are enumerated depth-first in lexicographic order
//! (element 0 most significant, directions in canonical order) with coverage
//! counts updated incrementally along the branch. The first assignment that
//! attains the minimum is reported.

use crate::error::{EscapeError, Result};
use crate::exec::Exec;
use crate::geometry::{
    build_escape_grid, escape_path, Axis, Direction, EscapeAssignment, RepInstance, SepInstance,
};

pub const DEFAULT_CAP: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Largest instance the enumeration accepts.
    pub cap: usize,
    pub exec: Exec,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: DEFAULT_CAP,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub opt_density: u64,
    pub opt_assignment: EscapeAssignment,
    /// SEP only: minimum boundary density over all assignments, minimized
    /// independently of `opt_density`.
    pub opt_boundary_density: Option<u64>,
    pub opt_boundary_assignment: Option<EscapeAssignment>,
}

pub fn solve_exact_rep(inst: &RepInstance) -> Result<OracleResult> {
    solve_exact_rep_with(inst, &OracleConfig::default())
}

pub fn solve_exact_rep_with(inst: &RepInstance, cfg: &OracleConfig) -> Result<OracleResult> {
    check_cap(inst.len(), cfg.cap)?;
    let grid = build_escape_grid(inst);
    let rows = grid.rows();
    let paths: Vec<[Vec<u32>; 4]> = inst
        .rects
        .iter()
        .map(|r| {
            Direction::ALL.map(|d| {
                let (cs, rs) = grid.cell_span(&escape_path(r, d, &inst.boundary));
                cs.flat_map(|i| rs.clone().map(move |j| (i * rows + j) as u32))
                    .collect()
            })
        })
        .collect();
    let model = Coverage {
        sites: grid.cell_count(),
        paths,
    };
    let (opt_density, code) = model.minimize(cfg.exec);
    Ok(OracleResult {
        opt_density,
        opt_assignment: decode(code, inst.len()),
        opt_boundary_density: None,
        opt_boundary_assignment: None,
    })
}

pub fn solve_exact_sep(inst: &SepInstance) -> Result<OracleResult> {
    solve_exact_sep_with(inst, &OracleConfig::default())
}

pub fn solve_exact_sep_with(inst: &SepInstance, cfg: &OracleConfig) -> Result<OracleResult> {
    check_cap(inst.len(), cfg.cap)?;
    let b = inst.boundary;
    let mut xs: Vec<i64> = inst.points.iter().map(|p| p.x).chain([0, b.width]).collect();
    let mut ys: Vec<i64> = inst.points.iter().map(|p| p.y).chain([0, b.height]).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let (nx, ny) = (xs.len(), ys.len());
    let site = |i: usize, j: usize| (i * ny + j) as u32;
    let on_edge = |s: u32| {
        let (i, j) = (s as usize / ny, s as usize % ny);
        i == 0 || j == 0 || i + 1 == nx || j + 1 == ny
    };

    let paths: Vec<[Vec<u32>; 4]> = inst
        .points
        .iter()
        .map(|p| {
            let cx = xs.binary_search(&p.x).unwrap();
            let cy = ys.binary_search(&p.y).unwrap();
            Direction::ALL.map(|d| {
                let end = b.project(*p, d);
                match d.axis() {
                    Axis::Horizontal => {
                        let ex = xs.binary_search(&end.x).unwrap();
                        (cx.min(ex)..=cx.max(ex)).map(|i| site(i, cy)).collect()
                    }
                    Axis::Vertical => {
                        let ey = ys.binary_search(&end.y).unwrap();
                        (cy.min(ey)..=cy.max(ey)).map(|j| site(cx, j)).collect()
                    }
                }
            })
        })
        .collect();
    let boundary_paths = paths
        .iter()
        .map(|dirs| dirs.clone().map(|v| v.into_iter().filter(|&s| on_edge(s)).collect()))
        .collect();

    let full = Coverage {
        sites: nx * ny,
        paths,
    };
    let edge = Coverage {
        sites: nx * ny,
        paths: boundary_paths,
    };
    let (opt_density, code) = full.minimize(cfg.exec);
    let (opt_boundary, bcode) = edge.minimize(cfg.exec);
    Ok(OracleResult {
        opt_density,
        opt_assignment: decode(code, inst.len()),
        opt_boundary_density: Some(opt_boundary),
        opt_boundary_assignment: Some(decode(bcode, inst.len())),
    })
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(EscapeError::TooLarge { n, cap });
    }
    Ok(())
}

fn decode(code: u64, n: usize) -> EscapeAssignment {
    EscapeAssignment::new(
        (0..n)
            .map(|i| Direction::from_index(((code >> (2 * (n - 1 - i))) & 3) as usize))
            .collect(),
    )
}

/// Site lists per element and direction; an assignment's value is the
/// maximum number of chosen lists containing one site.
struct Coverage {
    sites: usize,
    paths: Vec<[Vec<u32>; 4]>,
}

impl Coverage {
    /// Returns the minimum and the lexicographically first code attaining it.
    fn minimize(&self, exec: Exec) -> (u64, u64) {
        let n = self.paths.len();
        if n == 0 {
            return (0, 0);
        }
        let depth = n.min(3);
        let branches = 1usize << (2 * depth);
        let results = exec.map_range(branches, |prefix| {
            let mut counts = vec![0u32; self.sites];
            let mut level = 0;
            for i in 0..depth {
                let d = (prefix >> (2 * (depth - 1 - i))) & 3;
                for &s in &self.paths[i][d] {
                    counts[s as usize] += 1;
                    level = level.max(counts[s as usize]);
                }
            }
            let mut best = (u32::MAX, 0u64);
            self.descend(depth, prefix as u64, level, &mut counts, &mut best);
            best
        });
        let (value, code) = results.into_iter().min().expect("at least one branch");
        (value as u64, code)
    }

    fn descend(&self, i: usize, code: u64, level: u32, counts: &mut [u32], best: &mut (u32, u64)) {
        if i == self.paths.len() {
            if level < best.0 {
                *best = (level, code);
            }
            return;
        }
        for (d, sites) in self.paths[i].iter().enumerate() {
            let mut next = level;
            for &s in sites {
                counts[s as usize] += 1;
                next = next.max(counts[s as usize]);
            }
            self.descend(i + 1, (code << 2) | d as u64, next, counts, best);
            for &s in sites {
                counts[s as usize] -= 1;
            }
        }
    }
}
