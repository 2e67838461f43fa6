use std::fmt::Write;

use anyhow::Result;
use escape_core::peeling::peel;
use escape_core::{Boundary, Direction, EscapeAssignment, EscapeError, Instance, LatticePoint, Rect, Solution};

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];
const TARGET: i64 = 600;
const MARGIN: i64 = 10;

struct Canvas {
    scale: i64,
    height: i64,
}

impl Canvas {
    fn new(b: Boundary) -> Self {
        Canvas {
            scale: (TARGET / b.width.max(b.height)).max(1),
            height: b.height,
        }
    }

    fn x(&self, x: i64) -> i64 {
        MARGIN + x * self.scale
    }

    /// SVG y grows downward.
    fn y(&self, y: i64) -> i64 {
        MARGIN + (self.height - y) * self.scale
    }

    fn rect_attrs(&self, r: &Rect) -> String {
        format!(
            "x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"",
            self.x(r.x1),
            self.y(r.y2),
            r.width() * self.scale,
            r.height() * self.scale
        )
    }

    fn rect_path(&self, r: &Rect) -> String {
        format!("M{} {} H{} V{} H{} Z", self.x(r.x1), self.y(r.y1), self.x(r.x2), self.y(r.y2), self.x(r.x1))
    }
}

fn colour(level: usize) -> &'static str {
    PALETTE[level % PALETTE.len()]
}

/// Draws the instance, and its escape paths when a solution or peeling levels
/// are requested. Colours follow the peeling level with `levels`, otherwise
/// the escape direction. Output depends only on the inputs.
pub fn render(inst: &Instance, sol: Option<&Solution>, levels: bool) -> Result<String> {
    let b = inst.boundary();
    let c = Canvas::new(b);
    let (w, h) = (b.width * c.scale + 2 * MARGIN, b.height * c.scale + 2 * MARGIN);

    let (assignment, level_of): (Option<EscapeAssignment>, Option<Vec<usize>>) = if levels {
        let rep = match inst {
            Instance::Rep(r) => r.clone(),
            Instance::Sep(s) => s.as_unit_squares(),
        };
        let p = peel(&rep)?;
        (Some(p.assignment), Some(p.level_of))
    } else {
        (sol.map(Solution::assignment), None)
    };
    if let Some(a) = &assignment {
        if a.len() != inst.len() {
            return Err(EscapeError::AssignmentLength { expected: inst.len(), got: a.len() }.into());
        }
    }
    let fill = |i: usize, d: Option<Direction>| match (&level_of, d) {
        (Some(l), _) => colour(l[i] - 1),
        (None, Some(d)) => colour(d.index()),
        (None, None) => "#888888",
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(
        out,
        "<polygon class=\"boundary\" points=\"{},{} {},{} {},{} {},{}\" fill=\"none\" stroke=\"black\"/>",
        c.x(0),
        c.y(0),
        c.x(b.width),
        c.y(0),
        c.x(b.width),
        c.y(b.height),
        c.x(0),
        c.y(b.height)
    );
    match inst {
        Instance::Rep(r) => {
            if let Some(a) = &assignment {
                for (i, rect) in r.rects.iter().enumerate() {
                    let path = escape_core::geometry::escape_path(rect, a.get(i), &b);
                    let _ = writeln!(
                        out,
                        "<path class=\"escape\" d=\"{}\" fill=\"{}\" fill-opacity=\"0.25\" stroke=\"none\"/>",
                        c.rect_path(&path),
                        fill(i, Some(a.get(i)))
                    );
                }
            }
            for (i, rect) in r.rects.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "<rect {} fill=\"{}\" stroke=\"black\"/>",
                    c.rect_attrs(rect),
                    fill(i, assignment.as_ref().map(|a| a.get(i)))
                );
            }
        }
        Instance::Sep(s) => {
            let radius = (c.scale / 4).max(2);
            if let Some(a) = &assignment {
                for (i, &p) in s.points.iter().enumerate() {
                    let q: LatticePoint = b.project(p, a.get(i));
                    let _ = writeln!(
                        out,
                        "<path class=\"escape\" d=\"M{} {} L{} {}\" stroke=\"{}\" stroke-opacity=\"0.4\" stroke-width=\"{}\"/>",
                        c.x(p.x),
                        c.y(p.y),
                        c.x(q.x),
                        c.y(q.y),
                        fill(i, Some(a.get(i))),
                        radius
                    );
                }
            }
            for (i, p) in s.points.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{radius}\" fill=\"{}\"/>",
                    c.x(p.x),
                    c.y(p.y),
                    fill(i, assignment.as_ref().map(|a| a.get(i)))
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
