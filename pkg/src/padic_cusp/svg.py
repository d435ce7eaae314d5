"""Hand-written SVG for apartment windows and tree balls.

Positions are computed exactly in simple-coroot coordinates and only turned
into floats (fixed number of decimals) when writing, so output is byte-stable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import escape

from .building import ApartmentWindow, TreeBall, _linear_form

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
SIZE = 480
MARGIN = 20


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _plane_basis(vectors):
    """Orthonormal coordinates for the span of ``vectors`` (Gram-Schmidt on floats)."""
    basis = []
    for v in vectors:
        w = [float(c) for c in v]
        for b in basis:
            d = sum(x * y for x, y in zip(w, b))
            w = [x - d * y for x, y in zip(w, b)]
        n = math.sqrt(sum(x * x for x in w))
        basis.append([x / n for x in w])
    return basis


class _Projector:
    def __init__(self, win: ApartmentWindow):
        rs = win.root_system
        self.coroots = [rs.coroots[i] for i in rs.simple_roots]
        self.basis = _plane_basis(self.coroots)
        corners = [self.raw(t) for t in _corners(win.box)]
        xs = [c[0] for c in corners]
        ys = [c[1] for c in corners]
        self.lo = (min(xs), min(ys))
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        self.scale = (SIZE - 2 * MARGIN) / span

    def raw(self, t):
        v = [sum(float(ti) * float(c[k]) for ti, c in zip(t, self.coroots)) for k in range(len(self.coroots[0]))]
        coords = [sum(x * y for x, y in zip(v, b)) for b in self.basis]
        return (coords + [0.0])[:2]

    def __call__(self, t):
        x, y = self.raw(t)
        return (MARGIN + (x - self.lo[0]) * self.scale, SIZE - MARGIN - (y - self.lo[1]) * self.scale)


def _box_text(box) -> str:
    return " x ".join(f"[{lo}, {hi}]" for lo, hi in box)


def _corners(box):
    if len(box) == 1:
        return [(box[0][0],), (box[0][1],)]
    (a, b), (c, d) = box
    return [(a, c), (b, c), (b, d), (a, d)]


def _clip_line(form, k, box):
    """Endpoints of {t : form . t = k} inside a 2-dimensional box, exactly."""
    (a, b), (c, d) = box
    f0, f1 = form
    pts = set()
    if f1 != 0:
        for x in (a, b):
            y = (k - f0 * x) / f1
            if c <= y <= d:
                pts.add((x, y))
    if f0 != 0:
        for y in (c, d):
            x = (k - f1 * y) / f0
            if a <= x <= b:
                pts.add((x, y))
    pts = sorted(pts)
    return (pts[0], pts[-1]) if len(pts) >= 2 else None


def apartment_svg(win: ApartmentWindow) -> str:
    """One <g> per positive root holding its family of walls; vertices as small circles."""
    rs = win.root_system
    if rs.rank not in (1, 2):
        raise ValueError("SVG output is available for rank 1 and 2")
    proj = _Projector(win)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" '
           f'width="{SIZE}" height="{SIZE}">',
           f"<title>{escape(rs.name)} apartment window {_box_text(win.box)}</title>"]
    families = {}
    for alpha, k in win.hyperplanes:
        families.setdefault(tuple(alpha), []).append(k)
    for i, (alpha, ks) in enumerate(families.items()):
        color = COLORS[i % len(COLORS)]
        form = _linear_form(rs, alpha)
        out.append(f'<g class="family" data-root="{",".join(map(str, alpha))}" stroke="{color}" '
                   f'stroke-width="1.2">')
        for k in ks:
            if rs.rank == 1:
                t = Fraction(k) / form[0]
                x, _ = proj((t,))
                out.append(f'<line x1="{_fmt(x)}" y1="{_fmt(SIZE / 2 - 10)}" x2="{_fmt(x)}" '
                           f'y2="{_fmt(SIZE / 2 + 10)}" data-k="{k}"/>')
                continue
            seg = _clip_line(form, k, win.box)
            if seg is None:
                continue
            (x1, y1), (x2, y2) = proj(seg[0]), proj(seg[1])
            out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" data-k="{k}"/>')
        out.append("</g>")
    if rs.rank == 1:
        (x1, _), (x2, _) = proj((win.box[0][0],)), proj((win.box[0][1],))
        out.append(f'<line class="axis" x1="{_fmt(x1)}" y1="{_fmt(SIZE / 2)}" x2="{_fmt(x2)}" '
                   f'y2="{_fmt(SIZE / 2)}" stroke="black"/>')
    out.append('<g class="vertices" fill="black">')
    for v in win.vertices:
        x, y = proj(v)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def tree_svg(ball: TreeBall) -> str:
    """Radial drawing of a ball in the tree; root at the center."""
    center = SIZE / 2
    step = (SIZE / 2 - MARGIN) / max(ball.depth, 1)
    pos = {(): (center, center)}
    leaves = [v for v in ball.vertices if len(v) == ball.depth] or [()]
    order = {v: i for i, v in enumerate(sorted(leaves))}

    def angle(v):
        below = [order[w] for w in leaves if w[:len(v)] == v]
        return 2 * math.pi * (sum(below) / len(below) + 0.5) / len(leaves)

    for v in ball.vertices:
        if v:
            a = angle(v)
            pos[v] = (center + step * len(v) * math.cos(a), center + step * len(v) * math.sin(a))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" '
           f'width="{SIZE}" height="{SIZE}">',
           f"<title>ball of radius {ball.depth} in the tree of SL2 with q = {ball.q}</title>",
           '<g class="edges" stroke="black" stroke-width="1.2">']
    for a, b in ball.edges:
        (x1, y1), (x2, y2) = pos[a], pos[b]
        out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    out.append("</g>")
    out.append('<g class="vertices">')
    for v in ball.vertices:
        x, y = pos[v]
        fill = "black" if ball.vertex_type[v] == 0 else "white"
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{fill}" stroke="black"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
