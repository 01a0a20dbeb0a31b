"""Deterministic SVG drawings of the two graph models.

Vertex, edge and loop counts are written as ``data-*`` attributes on the root
element so that drawings can be checked without looking at pixels.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import quoteattr

from .arrangement import LineArrangement
from .fiber_graph import FiberGraph, build_graph, build_real_graph

W, H, PAD = 640, 480, 40
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _f(x: float) -> str:
    return f"{x:.2f}"


def _layout_abstract(arr: LineArrangement, g: FiberGraph) -> dict:
    """Sigma sheets in one column per line, saddle cylinders along the bottom."""
    nl = len(arr.lines)
    pos = {}
    for v in g.vertices:
        if v[0] == "sigma":
            _, i, x = v
            cx = PAD + (W - 2 * PAD) * (i + 0.5) / nl
            cy = PAD + (H / 2 - PAD) * (x + 0.5) / arr.multiplicities[i]
            pos[v] = (cx, cy)
    saddles = [v for v in g.vertices if v[0] == "saddle"]
    for k, v in enumerate(saddles):
        pos[v] = (PAD + (W - 2 * PAD) * (k + 0.5) / len(saddles), H - PAD - 30)
    return pos


def _layout_real(arr: LineArrangement, g: FiberGraph) -> dict:
    pts = {pair: (float(p[0]), float(p[1])) for pair, p in g.coordinates.items()}
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    sx = (W - 2 * PAD) / (x1 - x0 or 1.0)
    sy = (H - 2 * PAD) / (y1 - y0 or 1.0)
    s = min(sx, sy)
    pos = {}
    for pair, h in g.vertices:
        x, y = pts[pair]
        # cylinders at one point are spread on a small circle
        e = arr.e(*pair)
        ang = 2 * math.pi * h / e
        r = 0.0 if e == 1 else 8.0
        pos[(pair, h)] = (PAD + (x - x0) * s + r * math.cos(ang), H - PAD - (y - y0) * s + r * math.sin(ang))
    return pos


def render_svg(arr: LineArrangement, model: str = "Gcheck") -> str:
    if model == "G":
        g = build_graph(arr)
        pos = _layout_abstract(arr, g)
    elif model == "Gcheck":
        g = build_real_graph(arr)
        pos = _layout_real(arr, g)
    else:
        raise ValueError(f"unknown model {model!r}; use G or Gcheck")
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" '
        f'data-model="{model}" data-vertices="{g.n_vertices}" data-edges="{g.n_edges}" '
        f'data-loops="{g.n_loops}" data-betti="{g.betti}" '
        f'data-multiplicities={quoteattr(",".join(map(str, arr.multiplicities)))}>',
        f"<title>{model} for multiplicities {arr.multiplicities}</title>",
    ]
    parallel: dict = {}
    for idx, e in enumerate(g.edges):
        (x1, y1), (x2, y2) = pos[e.src], pos[e.dst]
        if e.is_loop:
            out.append(
                f'<circle class="loop" data-edge="{idx}" cx="{_f(x1)}" cy="{_f(y1 - 9)}" r="9" fill="none" stroke="#444"/>'
            )
            continue
        line = e.label[1] if e.label[0] == "seg" else e.label[3]
        key = (min(e.src, e.dst), max(e.src, e.dst))
        k = parallel.get(key, 0)
        parallel[key] = k + 1
        # bend parallel copies apart: 0, +1, -1, +2, -2, ...
        bend = 10.0 * ((k + 1) // 2) * (1 if k % 2 else -1)
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        ln = math.hypot(dx, dy) or 1.0
        cx, cy = mx - bend * dy / ln, my + bend * dx / ln
        out.append(
            f'<path class="edge" data-edge="{idx}" data-line="{line}" d="M {_f(x1)} {_f(y1)} Q {_f(cx)} {_f(cy)} {_f(x2)} {_f(y2)}" '
            f'fill="none" stroke="{COLORS[line % len(COLORS)]}"/>'
        )
    for v in g.vertices:
        x, y = pos[v]
        out.append(f'<circle class="vertex" data-vertex={quoteattr(str(v))} cx="{_f(x)}" cy="{_f(y)}" r="4" fill="#000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
