"""Deterministic SVG drawings of normalized flowers and planar layouts."""

from __future__ import annotations

import math
from typing import List, Tuple

from .complexpack import PackingLayout
from .flower import NormalizedFlower
from .geom import INF, GenCircle

STYLE = (
    ".gencircle circle{fill:#cfe3f7;fill-opacity:.55;stroke:#1f4e79}"
    ".gencircle rect{fill:#e8e8e8;stroke:#555}"
    ".center rect{fill:#fbe5c8}"
    ".exterior circle{fill:none;stroke-dasharray:4 3}"
    ".dot{fill:#c0392b}"
    "text{font-family:sans-serif}"
)


def _f(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Doc:
    def __init__(self, xmin, xmax, ymin, ymax, width):
        w, h = xmax - xmin, ymax - ymin
        self.x0, self.x1 = xmin - 0.1 * w, xmax + 0.1 * w
        self.y0, self.y1 = ymin - 0.1 * h, ymax + 0.1 * h
        self.width = width
        self.unit = (self.x1 - self.x0) / width
        self.parts: List[str] = []

    def header(self) -> str:
        vw, vh = self.x1 - self.x0, self.y1 - self.y0
        height = int(round(self.width * vh / vw))
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
                f'height="{height}" viewBox="{_f(self.x0)} {_f(-self.y1)} {_f(vw)} {_f(vh)}">')

    def circle(self, c: complex, r: float, cls: str = "", ident: str = ""):
        attrs = f' id="{ident}"' if ident else ""
        self.parts.append(f'<g class="gencircle{(" " + cls) if cls else ""}"{attrs}>'
                          f'<circle cx="{_f(c.real)}" cy="{_f(-c.imag)}" r="{_f(r)}" '
                          f'stroke-width="{_f(self.unit)}"/></g>')

    def band(self, ylo: float, yhi: float, cls: str = "", ident: str = ""):
        """Horizontal half plane clipped to the view box."""
        lo, hi = max(ylo, self.y0), min(yhi, self.y1)
        if hi < lo:
            lo = hi
        attrs = f' id="{ident}"' if ident else ""
        self.parts.append(f'<g class="gencircle{(" " + cls) if cls else ""}"{attrs}>'
                          f'<rect x="{_f(self.x0)}" y="{_f(-hi)}" width="{_f(self.x1 - self.x0)}" '
                          f'height="{_f(hi - lo)}" stroke-width="{_f(self.unit)}"/></g>')

    def line(self, c: GenCircle):
        d = c.tangent
        span = 4 * (self.x1 - self.x0 + self.y1 - self.y0)
        a, b = c.point - span * d, c.point + span * d
        self.parts.append(f'<g class="gencircle line"><line x1="{_f(a.real)}" y1="{_f(-a.imag)}" '
                          f'x2="{_f(b.real)}" y2="{_f(-b.imag)}" stroke="#1f4e79" '
                          f'stroke-width="{_f(self.unit)}"/></g>')

    def dot(self, z):
        if z is INF:
            return
        self.parts.append(f'<circle class="dot" cx="{_f(z.real)}" cy="{_f(-z.imag)}" '
                          f'r="{_f(3 * self.unit)}"/>')

    def text(self, z: complex, s: str):
        self.parts.append(f'<text x="{_f(z.real)}" y="{_f(-z.imag)}" '
                          f'font-size="{_f(11 * self.unit)}">{s}</text>')

    def render(self) -> str:
        return "\n".join([self.header(), f"<style>{STYLE}</style>"] + self.parts + ["</svg>"]) + "\n"


def _flower_svg(fl: NormalizedFlower, annotate: bool, width: int) -> str:
    fin = [j for j in range(1, fl.n) if not fl.is_half_plane(j)]
    xs = [fl.t[j] - fl.r[j] for j in fin] + [fl.t[j] + fl.r[j] for j in fin]
    ymin = min([-2.0] + [-2.0 * fl.r[j] for j in fin])
    span = max(xs) - min(xs)
    doc = _Doc(min(xs), max(xs), ymin, 0.25 * max(span, 2.0), width)
    doc.band(0.0, math.inf, "center", "C")
    doc.band(-math.inf, -2.0, "", "c0")
    for j in range(1, fl.n):
        p = fl.petal(j)
        if p.is_line:
            doc.band(-math.inf, p.point.imag, "", f"c{j}")
        else:
            doc.circle(p.center, p.radius, "", f"c{j}")
    for j in range(fl.n):
        doc.dot(fl.tangency(j, j + 1))
    if annotate:
        for j in fin:
            doc.text(complex(fl.t[j], 0.05 * span),
                     f"t{j}={fl.t[j]:.4g}, r{j}={fl.r[j]:.4g}")
    return doc.render()


def _layout_svg(lay: PackingLayout, annotate: bool, width: int) -> str:
    circles = [(v, c) for v, c in sorted(lay.vertex_circles.items())]
    disc = [(v, c) for v, c in circles if not c.is_line and c.orientation > 0]
    if not disc:
        raise ValueError("nothing finite to draw")
    radii = sorted(c.radius for _, c in disc)
    cap = 50 * radii[len(radii) // 2]
    box = [c for _, c in disc if c.radius <= cap] or [c for _, c in disc]
    doc = _Doc(min(c.center.real - c.radius for c in box), max(c.center.real + c.radius for c in box),
               min(c.center.imag - c.radius for c in box), max(c.center.imag + c.radius for c in box),
               width)
    for v, c in circles:
        if c.is_line:
            doc.line(c)
        else:
            doc.circle(c.center, c.radius, "exterior" if c.orientation < 0 else "", f"v{v}")
    seen = set()
    for face, ft in zip(lay.complex.faces, lay.placements):
        for i in range(3):
            e = tuple(sorted((face[i], face[(i + 1) % 3])))
            if e not in seen:
                seen.add(e)
                doc.dot(ft.tangencies[i])
    if annotate:
        for v, c in disc:
            doc.text(c.center, str(v))
    return doc.render()


def render_svg(subject, annotate: bool = False, width: int = 800) -> str:
    """SVG text for a NormalizedFlower or a PackingLayout."""
    if isinstance(subject, NormalizedFlower):
        return _flower_svg(subject, annotate, width)
    if isinstance(subject, PackingLayout):
        return _layout_svg(subject, annotate, width)
    raise TypeError(f"cannot render {type(subject).__name__}")
