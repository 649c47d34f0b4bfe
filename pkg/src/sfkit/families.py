"""Closed-form flower families: uniform, extremal, Doyle, ring and soccerball."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Tuple

from .errors import AlphaOutOfRange, ConstraintViolated
from .flower import (ULabel, NormalizedFlower, _make_flower, geometric_label,
                     layout_flower)
from .geom import Circle, GenCircle

SQ3 = math.sqrt(3.0)


# uniform flowers


def uniform_u(n: int, d: int = 1) -> float:
    if n < 3:
        raise AlphaOutOfRange("n must be at least 3")
    alpha = d * math.pi / n
    if not 0 < alpha < math.pi / 2:
        raise AlphaOutOfRange(f"alpha = {d}pi/{n} must lie in (0, pi/2)")
    return 2.0 * math.cos(alpha) / SQ3


def uniform_schwarzian(n: int, d: int = 1) -> float:
    """Schwarzian shared by all edges of the uniform n-flower of degree d."""
    return 1.0 - uniform_u(n, d)


def uniform_flower(n: int, d: int = 1) -> NormalizedFlower:
    return layout_flower(n, [uniform_u(n, d)] * (n - 3))


def hidden_circle(fl: NormalizedFlower) -> Tuple[GenCircle, float]:
    """The disc tangent to every petal of a uniform flower, with its worst residual.

    It is fitted to c_0, c_1 and c_2: a disc above the line y = -2 touching
    it, with c_1 and c_2 externally tangent.
    """
    t2, r2 = fl.t[2], fl.r[2]
    x = (t2 * t2 + 4.0 - 4.0 * r2) / (2.0 * t2)
    rho = x * x / 4.0
    hid = Circle(complex(x, -2.0 + rho), rho)
    worst = 0.0
    for j in range(1, fl.n):
        if fl.is_half_plane(j):
            continue
        c = complex(fl.t[j], -fl.r[j])
        gap = abs(abs(hid.center - c) - (rho + fl.r[j])) / (rho + fl.r[j])
        worst = max(worst, gap)
    return hid, worst


# extremal flowers


def extremal_label(n: int) -> ULabel:
    """The extremal univalent n-flower: petals of radius 1 in a row."""
    if n < 3:
        raise ValueError("n must be at least 3")
    u = [(n - 2) / SQ3, 1 / SQ3] + [2 / SQ3] * (n - 3) + [1 / SQ3]
    return ULabel(tuple(u[:n]))


# Doyle flowers


def doyle_u3(u1: float, u2: float) -> float:
    den = 3.0 * u1 * u2 - 1.0
    if not den > 0:
        raise ConstraintViolated(3, den)
    return (u1 + u2) / den


def doyle(u1: float, u2: float) -> ULabel:
    """Period-3 six-label (u_1, u_2, u_3 repeated)."""
    u3 = doyle_u3(u1, u2)
    return ULabel((u3, u1, u2, u3, u1, u2))


def doyle_radii(a: float, b: float) -> List[float]:
    return [a, b, b / a, 1.0 / a, 1.0 / b, a / b]


# ring flowers


def ring_tangencies(k: int) -> List[Fraction]:
    """Scaled tangency points in insertion order: 0, 1, 1/2, 2/3, 3/5, ..."""
    out = [Fraction(0), Fraction(1)]
    while len(out) < k:
        a, b = out[-2], out[-1]
        out.append(Fraction(a.numerator + b.numerator, a.denominator + b.denominator))
    return out[:k]


def ring_radii(k: int) -> List[float]:
    """Radii (before scaling by 1/2) of the first k petals in insertion order."""
    return [1.0 / f.denominator ** 2 for f in ring_tangencies(k)]


def _ring_order(n: int) -> List[Fraction]:
    return sorted(ring_tangencies(n - 1))


def ring_flower(n: int) -> NormalizedFlower:
    """The nested ring n-flower, laid out from its Ford-circle geometry."""
    if n < 3:
        raise ValueError("n must be at least 3")
    fr = _ring_order(n)
    t = [math.inf] + [2.0 * float(f) for f in fr]
    r = [math.inf] + [1.0 / f.denominator ** 2 for f in fr]
    depths = [2.0] + [0.0] * (n - 1)
    fl = _make_flower(n, t, r, depths, ULabel(tuple([1.0] * n)), ())
    return _make_flower(n, t, r, depths, geometric_label(fl), ())


def ring_label(n: int) -> ULabel:
    """u-label of the ring n-flower.

    Every edge carries sqrt(3), except 1/sqrt(3) on c_0 and on the newest
    petal, and 2/sqrt(3) on c_1 and on the second newest petal.
    """
    if n == 3:
        return ULabel((1 / SQ3,) * 3)
    if n < 3:
        raise ValueError("n must be at least 3")
    ins = ring_tangencies(n - 1)
    order = sorted(ins)
    u = [SQ3] * n
    u[0] = 1 / SQ3
    u[1] = 2 / SQ3
    u[1 + order.index(ins[-1])] = 1 / SQ3
    u[1 + order.index(ins[-2])] = 2 / SQ3
    return ULabel(tuple(u))


# soccerball


def soccerball_labels(branched: bool = False) -> Tuple[float, float]:
    """(s, s') on the 5-6 and 6-6 edges from the reciprocal rule u u' = 1.

    These close the degree-5 flowers but not the degree-6 flowers of
    soccerball_complex; soccerball_packing_labels gives the pair that does.
    """
    u = 2.0 * math.cos((2 if branched else 1) * math.pi / 5) / SQ3
    return 1.0 - u, 1.0 - 1.0 / u


def hexagon_partner(s: float) -> float:
    """s' closing the degree-6 flowers (s, s', s', s, s', s') of the soccerball.

    Closure of that period-3 six-label reads 3 u u'^2 = u + 2 u'.
    """
    u = 1.0 - s
    if not u > 0:
        raise ValueError("s must be below 1")
    up = (1.0 + math.sqrt(1.0 + 3.0 * u * u)) / (3.0 * u)
    return 1.0 - up


def soccerball_packing_labels(branched: bool = False) -> Tuple[float, float]:
    """(s, s') that actually pack the 42-vertex soccerball complex."""
    s = uniform_schwarzian(5, 2 if branched else 1)
    return s, hexagon_partner(s)


def alternating_six(u: float) -> ULabel:
    """Six-label alternating u and 1/u."""
    return ULabel((u, 1 / u) * 3)
