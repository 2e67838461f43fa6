use std::fmt::Write;

use crate::geometry::{build_escape_grid, escape_path, Direction, EscapeGrid, RepInstance};

/// Variable name of `r_{i,dir}`.
pub fn var_name(i: usize, dir: Direction) -> String {
    format!("r_{i}_{}", dir.code())
}

/// For every escape grid cell (column-major, `i * rows + j`), the paths
/// `(rectangle, direction)` covering it, sorted.
pub fn cell_paths(inst: &RepInstance) -> (EscapeGrid, Vec<Vec<(usize, Direction)>>) {
    let grid = build_escape_grid(inst);
    let rows = grid.rows();
    let mut cells = vec![Vec::new(); grid.cell_count()];
    for (idx, r) in inst.rects.iter().enumerate() {
        for dir in Direction::ALL {
            let (cs, rs) = grid.cell_span(&escape_path(r, dir, &inst.boundary));
            for i in cs {
                for j in rs.clone() {
                    cells[i * rows + j].push((idx, dir));
                }
            }
        }
    }
    (grid, cells)
}

const TERMS_PER_LINE: usize = 8;

fn push_terms(out: &mut String, head: &str, terms: impl Iterator<Item = String>, tail: &str) {
    out.push_str(head);
    for (t, term) in terms.enumerate() {
        if t > 0 {
            out.push_str(" +");
            if t % TERMS_PER_LINE == 0 {
                out.push_str("\n   ");
            }
        }
        out.push(' ');
        out.push_str(&term);
    }
    out.push_str(tail);
    out.push('\n');
}

/// The relaxation in CPLEX LP format: minimize `k` subject to one escape
/// constraint per rectangle and one load constraint per escape grid cell.
/// An empty instance yields a program with no constraints.
pub fn export_lp(inst: &RepInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ rectangles: {}", inst.len());
    out.push_str("Minimize\n obj: k\nSubject To\n");
    for i in 0..inst.len() {
        push_terms(
            &mut out,
            &format!(" esc_{i}:"),
            Direction::ALL.iter().map(|&d| var_name(i, d)),
            " >= 1",
        );
    }
    if !inst.is_empty() {
        let (grid, cells) = cell_paths(inst);
        let rows = grid.rows();
        for (c, paths) in cells.iter().enumerate() {
            let head = format!(" cell_{}_{}:", c / rows, c % rows);
            if paths.is_empty() {
                let _ = writeln!(out, "{head} - k <= 0");
            } else {
                push_terms(&mut out, &head, paths.iter().map(|&(i, d)| var_name(i, d)), " - k <= 0");
            }
        }
    }
    out.push_str("Bounds\n");
    for i in 0..inst.len() {
        for d in Direction::ALL {
            let _ = writeln!(out, " 0 <= {} <= 1", var_name(i, d));
        }
    }
    out.push_str(" k >= 0\nEnd\n");
    out
}
