"""Points of the Riemann sphere, generalized circles and Mobius maps.

Points are plain Python complex numbers or the singleton ``INF``.  A
``GenCircle`` is either a euclidean circle or a line (a circle through
infinity); its ``orientation`` says which side is the interior, always the
side on the left of positive traversal.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DegenerateTriple, NotTangent, SingularMatrix

__all__ = [
    "INF", "ExtPoint", "is_inf", "GenCircle", "Circle", "Line", "Mobius",
    "normalize_mobius", "mobius_from_points", "apply_mobius", "tangency_point",
    "chordal_distance", "lift", "circle_distance", "unit_disc_chart",
]

POLE_TOL = 1e-13


class _Infinity:
    """The point at infinity.  There is exactly one instance, ``INF``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtPoint = Union[complex, _Infinity]


def is_inf(z) -> bool:
    return z is INF


def as_point(z) -> ExtPoint:
    if z is INF:
        return INF
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"finite point expected, got {z!r}; use INF for infinity")
    return z


def lift(z: ExtPoint) -> np.ndarray:
    """Inverse stereographic projection onto the unit sphere."""
    if z is INF:
        return np.array([0.0, 0.0, 1.0])
    m = abs(z) ** 2
    return np.array([2 * z.real, 2 * z.imag, m - 1.0]) / (m + 1.0)


def chordal_distance(z: ExtPoint, w: ExtPoint) -> float:
    if z is INF and w is INF:
        return 0.0
    if z is INF:
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    if w is INF:
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


# ---------------------------------------------------------------------------
# generalized circles


@dataclass(frozen=True)
class GenCircle:
    """A circle or a line, with an orientation choosing the interior.

    For ``kind == "circle"`` orientation +1 means the disc, -1 its complement.
    For ``kind == "line"`` the positive direction is ``orientation * tangent``
    and the interior is the half plane on its left.
    """

    kind: str
    center: complex = 0j
    radius: float = 0.0
    point: complex = 0j
    tangent: complex = 1 + 0j
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if self.kind == "circle":
            if not (self.radius > 0 and math.isfinite(self.radius)):
                raise ValueError(f"circle radius must be positive, got {self.radius}")
        elif self.kind == "line":
            if abs(abs(self.tangent) - 1.0) > 1e-12:
                raise ValueError("line tangent must be a unit complex number")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def is_line(self) -> bool:
        return self.kind == "line"

    @property
    def direction(self) -> complex:
        """Unit direction of positive traversal (lines only)."""
        return self.orientation * self.tangent

    def scale(self) -> float:
        if self.is_line:
            return abs(self.foot(0j)) + 1.0
        return abs(self.center) + self.radius

    def foot(self, z: complex) -> complex:
        """Closest point of a line to z."""
        d = self.tangent
        return self.point + d * ((z - self.point) / d).real

    def depth(self, z: ExtPoint) -> float:
        """Signed distance into the interior (negative outside)."""
        if self.is_line:
            if z is INF:
                return 0.0
            return ((z - self.point) / self.direction).imag
        if z is INF:
            return math.inf * self.orientation * -1
        return self.orientation * (self.radius - abs(z - self.center))

    def contains(self, z: ExtPoint, tol: float = 0.0) -> bool:
        return self.depth(z) > tol

    def point_at(self, theta: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * theta)

    def sample_points(self, avoid: ExtPoint | None = None) -> list:
        """Three points in positive traversal order, spread away from ``avoid``."""
        if self.is_line:
            d = self.direction
            if avoid is None or avoid is INF:
                f, h = self.point, 1.0
            else:
                f = self.foot(avoid)
                h = max(abs(avoid - f), 1.0)
            return [f - h * d, f + h * d, INF]
        if avoid is None or avoid is INF or abs(avoid - self.center) < 1e-300:
            phi = 0.0
        else:
            phi = cmath.phase(avoid - self.center)
        steps = [phi + math.pi / 3 + 2 * math.pi * k / 3 for k in range(3)]
        if self.orientation < 0:
            steps = steps[::-1]
        return [self.point_at(a) for a in steps]

    def interior_point(self) -> ExtPoint:
        if self.is_line:
            return self.point + 1j * self.direction
        return self.center if self.orientation > 0 else INF


def Circle(center, radius, orientation: int = 1) -> GenCircle:
    return GenCircle("circle", center=complex(center), radius=float(radius),
                     orientation=orientation)


def Line(point, tangent, orientation: int = 1) -> GenCircle:
    tangent = complex(tangent)
    return GenCircle("line", point=complex(point), tangent=tangent / abs(tangent),
                     orientation=orientation)


def _circle_through(w1: ExtPoint, w2: ExtPoint, w3: ExtPoint,
                    force_line: bool = False) -> GenCircle:
    """The oriented generalized circle through three points in positive order."""
    pts = [w1, w2, w3]
    if any(p is INF for p in pts):
        k = next(i for i, p in enumerate(pts) if p is INF)
        a, b = pts[(k + 1) % 3], pts[(k + 2) % 3]
        if abs(b - a) == 0:
            raise DegenerateTriple("coincident image points")
        return Line(a, b - a)
    a, b, c = w1, w2, w3
    cross = ((b - a).conjugate() * (c - a)).imag
    scale = max(abs(b - a), abs(c - a), abs(c - b))
    if scale == 0:
        raise DegenerateTriple("coincident image points")
    if force_line or abs(cross) <= 1e-13 * scale * scale:
        d = b - a
        lam = ((c - a) / d).real
        if 0 < lam < 1:
            d = -d
        return Line(a, d)
    # circumcenter
    bb, cc = b - a, c - a
    den = 2 * (bb.real * cc.imag - bb.imag * cc.real)
    ux = (cc.imag * abs(bb) ** 2 - bb.imag * abs(cc) ** 2) / den
    uy = (bb.real * abs(cc) ** 2 - cc.real * abs(bb) ** 2) / den
    center = a + complex(ux, uy)
    return Circle(center, abs(center - a), 1 if cross > 0 else -1)


# ---------------------------------------------------------------------------
# Mobius maps


@dataclass(frozen=True)
class Mobius:
    """z -> (a z + b) / (c z + d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @classmethod
    def from_matrix(cls, m) -> "Mobius":
        m = np.asarray(m, dtype=complex)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def __matmul__(self, other: "Mobius") -> "Mobius":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def pole(self) -> ExtPoint:
        """The point sent to infinity."""
        if abs(self.c) <= POLE_TOL * max(abs(self.a), abs(self.d), abs(self.b), 1e-300):
            return INF
        return -self.d / self.c

    def derivative(self, z: complex) -> complex:
        """m'(z) = det / (cz + d)^2."""
        return self.det / (self.c * z + self.d) ** 2

    def __call__(self, z: ExtPoint) -> ExtPoint:
        a, b, c, d = self.a, self.b, self.c, self.d
        if z is INF:
            if abs(c) <= POLE_TOL * max(abs(a), abs(c)):
                return INF
            return a / c
        den = c * z + d
        if abs(den) <= POLE_TOL * (abs(c * z) + abs(d)):
            return INF
        return (a * z + b) / den

    def allclose(self, other: "Mobius", tol: float = 1e-9) -> bool:
        """Equality as maps of the sphere (up to the scalar sign)."""
        p, q = normalize_mobius(self).matrix, normalize_mobius(other).matrix
        s = max(np.abs(p).max(), 1.0)
        return bool(min(np.abs(p - q).max(), np.abs(p + q).max()) <= tol * s)


def normalize_mobius(M: Mobius) -> Mobius:
    """Scale to det 1, choosing the sign with positive real trace."""
    det = M.det
    big = max(abs(M.a), abs(M.b), abs(M.c), abs(M.d))
    if big == 0 or abs(det) < 1e-14 * big * big:
        raise SingularMatrix(f"det {det!r} is numerically zero")
    k = cmath.sqrt(det)
    a, b, c, d = M.a / k, M.b / k, M.c / k, M.d / k
    tr = a + d
    if tr.real < 0 or (tr.real == 0 and tr.imag < 0):
        a, b, c, d = -a, -b, -c, -d
    return Mobius(a, b, c, d)


def _to_01inf(z1: ExtPoint, z2: ExtPoint, z3: ExtPoint) -> Mobius:
    """The map sending z1, z2, z3 to 0, 1, infinity."""
    if z1 is INF:
        return Mobius(0j, z3 - z2, -1 + 0j, z3)
    if z2 is INF:
        return Mobius(1 + 0j, -z1, 1 + 0j, -z3)
    if z3 is INF:
        return Mobius(1 + 0j, -z1, 0j, z2 - z1)
    return Mobius(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def _check_distinct(pts: Sequence[ExtPoint], tol: float = 1e-12):
    for i in range(3):
        for j in range(i + 1, 3):
            if chordal_distance(pts[i], pts[j]) < tol:
                raise DegenerateTriple(f"points {pts[i]!r} and {pts[j]!r} coincide")


def mobius_from_points(z1, z2, z3, w1, w2, w3) -> Mobius:
    """The unique normalized Mobius map with zi -> wi."""
    zs = [as_point(z) for z in (z1, z2, z3)]
    ws = [as_point(w) for w in (w1, w2, w3)]
    _check_distinct(zs)
    _check_distinct(ws)
    A = _to_01inf(*zs)
    B = _to_01inf(*ws)
    return normalize_mobius(B.inverse() @ A)


def apply_mobius(M: Mobius, x):
    """Image of a point or an oriented generalized circle."""
    if isinstance(x, GenCircle):
        pole = M.pole()
        pts = x.sample_points(avoid=pole)
        on = pole is not INF and abs(x.depth(pole)) <= 1e-10 * max(x.scale(), abs(pole))
        return _circle_through(*[M(p) for p in pts], force_line=on)
    return M(as_point(x))


# ---------------------------------------------------------------------------
# tangency and distances


def tangency_point(c1: GenCircle, c2: GenCircle, tol: float = 1e-9) -> ExtPoint:
    """The common point of two tangent generalized circles.

    The tangency test is relative to the configuration scale, the larger of
    |center| + radius over the two circles.
    """
    if c1.is_line and c2.is_line:
        cross = (c1.tangent.conjugate() * c2.tangent).imag
        if abs(cross) > tol:
            raise NotTangent(float("nan"), "lines cross at a finite point")
        return INF
    if c1.is_line or c2.is_line:
        line, circ = (c1, c2) if c1.is_line else (c2, c1)
        f = line.foot(circ.center)
        gap = abs(circ.center - f) - circ.radius
        if abs(gap) > tol * max(circ.scale(), abs(f)):
            raise NotTangent(gap)
        return f
    v = c2.center - c1.center
    dist = abs(v)
    r1, r2 = c1.radius, c2.radius
    ext = dist - (r1 + r2)
    inn = dist - abs(r1 - r2)
    scale = max(c1.scale(), c2.scale())
    if abs(ext) <= tol * scale:
        return c1.center + r1 * v / dist
    if abs(inn) <= tol * scale and dist > 0:
        if r1 >= r2:
            return c1.center + r1 * v / dist
        return c1.center - r1 * v / dist
    raise NotTangent(ext if abs(ext) < abs(inn) else inn)


def _plane(c: GenCircle):
    """Plane n.x = h cutting c from the sphere, n pointing into the interior."""
    p = [lift(z) for z in c.sample_points()]
    n = np.cross(p[1] - p[0], p[2] - p[0])
    n /= np.linalg.norm(n)
    h = float(n @ p[0])
    q = lift(c.interior_point())
    if n @ q < h:
        n, h = -n, -h
    return n, h


def circle_distance(c1: GenCircle, c2: GenCircle) -> float:
    """Chordal-style distance between oriented circles via their sphere planes."""
    n1, h1 = _plane(c1)
    n2, h2 = _plane(c2)
    return float(np.linalg.norm(n1 - n2) + abs(h1 - h2))


def unit_disc_chart(c: GenCircle) -> Mobius:
    """A Mobius map sending c onto the unit circle, interior onto the unit disc."""
    p = c.sample_points()
    return mobius_from_points(p[0], p[1], p[2], 1, 1j, -1)
