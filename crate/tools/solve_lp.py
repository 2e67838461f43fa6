#!/usr/bin/env python3
"""Solve the LP relaxation of REP instances with HiGHS (via scipy).

For every instance JSON given on the command line, writes a fractional
solution next to it (same stem, `.frac` suffix) in the format read by
`escape solve --frac`:

    objective <k>
    <i> <dir> <value>
"""
import json
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import lil_matrix

DIRS = "lrdu"


def paths(rect, width, height):
    x1, y1, x2, y2 = rect["x1"], rect["y1"], rect["x2"], rect["y2"]
    return [(0, y1, x2, y2), (x1, y1, width, y2), (x1, 0, x2, y2), (x1, y1, x2, height)]


def solve(inst):
    w, h = inst["boundary"]["width"], inst["boundary"]["height"]
    rects = inst["rectangles"]
    n = len(rects)
    xs = sorted({0, w, *(r["x1"] for r in rects), *(r["x2"] for r in rects)})
    ys = sorted({0, h, *(r["y1"] for r in rects), *(r["y2"] for r in rects)})
    cols, rows = len(xs) - 1, len(ys) - 1
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}

    nvar = 4 * n + 1
    k = 4 * n
    a = lil_matrix((n + cols * rows, nvar))
    b = np.zeros(n + cols * rows)
    for i in range(n):
        for d in range(4):
            a[i, 4 * i + d] = -1.0
        b[i] = -1.0
    for i, r in enumerate(rects):
        for d, (px1, py1, px2, py2) in enumerate(paths(r, w, h)):
            for c in range(xi[px1], xi[px2]):
                for rr in range(yi[py1], yi[py2]):
                    a[n + c * rows + rr, 4 * i + d] += 1.0
    for cell in range(cols * rows):
        a[n + cell, k] = -1.0
    cost = np.zeros(nvar)
    cost[k] = 1.0
    bounds = [(0.0, 1.0)] * (4 * n) + [(0.0, None)]
    res = linprog(cost, A_ub=a.tocsr(), b_ub=b, bounds=bounds, method="highs")
    if res.status != 0:
        raise RuntimeError(res.message)
    return res.x


def main():
    for arg in sys.argv[1:]:
        path = Path(arg)
        inst = json.loads(path.read_text())
        if inst["type"] != "rep":
            raise SystemExit(f"{path}: not a REP instance")
        x = solve(inst)
        n = len(inst["rectangles"])
        lines = [f"objective {float(x[4 * n])!r}"]
        for i in range(n):
            for d in range(4):
                v = max(0.0, float(x[4 * i + d]))
                if v > 0.0:
                    lines.append(f"{i} {DIRS[d]} {v!r}")
        path.with_suffix(".frac").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
