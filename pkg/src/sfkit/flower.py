"""Normalized flowers: layout from schwarzians, label completion, classification.

Conventions.  The center C is the upper half plane and the petal c_0 is the
half plane y <= -2, so they touch at infinity.  Petal c_1 is the unit disc
tangent to the real axis at 0 and the other petals c_2, ..., c_{n-1} follow
it in the positive direction.  A finite petal c_j touches the real axis at
t_j and has radius r_j.  Arrays ``t`` and ``r`` are indexed by petal number,
with ``inf`` standing for half planes (including c_0).

Labels are carried in u = 1 - s.  Edge e_j joins C to c_j and carries u_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import (ConstraintViolated, InvalidRadii, LayoutFailA, LayoutFailB,
                     NonPositiveU, NoSolution, PoleOnCircle, SchwarzianOutOfRange)
from .geom import (INF, Circle, GenCircle, Line, apply_mobius, mobius_from_points,
                   tangency_point)
from .schwarzian import Patch, intrinsic_schwarzian

SQ3 = math.sqrt(3.0)
TWO_PI = 2.0 * math.pi
HP_TOL = 1e-9
CENTER = Line(0j, 1 + 0j)
C0 = Line(-2j, -1 + 0j)


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class ULabel:
    """Cyclic label u_0, ..., u_{n-1}, with u_j = 1 - s_j > 0."""

    u: Tuple[float, ...]

    def __post_init__(self):
        u = tuple(float(x) for x in self.u)
        if len(u) < 3:
            raise ValueError("a flower label needs at least 3 entries")
        for j, x in enumerate(u):
            if not x > 0:
                raise NonPositiveU(f"u_{j} = {x} is not positive")
        object.__setattr__(self, "u", u)

    @classmethod
    def from_s(cls, s: Sequence[float]) -> "ULabel":
        for j, x in enumerate(s):
            if not x < 1:
                raise SchwarzianOutOfRange(f"s_{j} = {x} must be below 1")
        return cls(tuple(1.0 - float(x) for x in s))

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def s(self) -> Tuple[float, ...]:
        return tuple(1.0 - x for x in self.u)

    def __getitem__(self, j: int) -> float:
        return self.u[j % self.n]

    def params(self, k: int = 0) -> Tuple[float, ...]:
        """u_{k+1}, ..., u_{k+n-3}: the free parameters seen from petal c_k."""
        return tuple(self[k + i] for i in range(1, self.n - 2))

    def shift(self, k: int) -> "ULabel":
        return ULabel(tuple(self[j + k] for j in range(self.n)))

    def reverse(self) -> "ULabel":
        return ULabel(tuple(self[-j] for j in range(self.n)))

    def allclose(self, other: "ULabel", tol: float = 1e-9) -> bool:
        return self.n == other.n and all(
            abs(a - b) <= tol * max(1.0, abs(a)) for a, b in zip(self.u, other.u))


# ---------------------------------------------------------------------------
# the four layout situations


class SitResult(NamedTuple):
    delta: float
    rho: float
    outcome: str  # "positive", "negative" or "halfplane"


def _check_u(u: float):
    if not u > 0:
        raise NonPositiveU(f"u = {u} is not positive")


def _check_radii(*rs: float):
    for x in rs:
        if not x > 0:
            raise InvalidRadii(f"radius {x} is not positive")


def sit1(u0: float) -> Tuple[float, float]:
    """Petal c_{n-1}, tangent to both half planes, from u_0."""
    _check_u(u0)
    return 2.0 * SQ3 * u0, 1.0


def sit2(u1: float) -> Tuple[float, float]:
    """Petal c_2 from u_1, given c_0 and c_1."""
    _check_u(u1)
    t2 = 2.0 / (SQ3 * u1)
    return t2, 1.0 / (3.0 * u1 * u1)


def sit3(u: float, r: float, R: float) -> SitResult:
    """Next petal after a positive step; r is the previous radius, R the current."""
    _check_u(u)
    _check_radii(r, R)
    q = math.sqrt(R / r)
    den = SQ3 * u - q
    if abs(den) < HP_TOL * q:
        return SitResult(math.inf, math.inf, "halfplane")
    delta = 2.0 * R / den
    rho = delta * delta / (4.0 * R)
    return SitResult(delta, rho, "positive" if delta > 0 else "negative")


def sit4(u: float, r: float, R: float) -> Tuple[float, float]:
    """Next petal after a negative step (branching in progress)."""
    _check_u(u)
    _check_radii(r, R)
    delta = 2.0 * R / (SQ3 * u + math.sqrt(R / r))
    return delta, delta * delta / (4.0 * R)


def half_plane_step(u_next: float, r_prev: float) -> float:
    """Displacement t_{j+2} - t_j for the petal following a half plane c_{j+1}."""
    return -2.0 * SQ3 * u_next * r_prev


def r3_complete(r: float, R: float, sign: int = 1) -> float:
    """u_{n-2} once the last petal is forced to radius 1.

    ``sign`` is the sign of the displacement that produced the petal of
    radius R; r = inf means the preceding petal was a half plane.
    """
    _check_radii(r, R)
    q = 0.0 if math.isinf(r) else math.sqrt(R / r)
    return (math.sqrt(R) + sign * q) / SQ3


# ---------------------------------------------------------------------------
# normalized flowers


@dataclass(frozen=True)
class Step:
    j: int
    situation: str  # S1, S2, S3, S4 or HP
    sign: int


@dataclass(frozen=True)
class NormalizedFlower:
    n: int
    t: Tuple[float, ...]
    r: Tuple[float, ...]
    petals: Tuple[GenCircle, ...]
    label: ULabel
    trace: Tuple[Step, ...] = ()
    delta: Tuple[float, ...] = field(default=())

    center = CENTER

    @property
    def c0(self) -> GenCircle:
        return self.petals[0]

    def petal(self, j: int) -> GenCircle:
        return self.petals[j % self.n]

    def is_half_plane(self, j: int) -> bool:
        return self.petal(j).is_line

    def tangency(self, i: int, j: int):
        return tangency_point(self.petal(i), self.petal(j))

    def center_tangency(self, j: int):
        return INF if self.is_half_plane(j) else complex(self.t[j % self.n])

    def patch(self, j: int) -> Patch:
        """{c_j, C | c_{j-1}, c_{j+1}} for the edge e_j."""
        cj, ca, cb = self.petal(j), self.petal(j - 1), self.petal(j + 1)
        tj = self.center_tangency(j)
        f_t = (tj, self.center_tangency(j - 1), self.tangency(j - 1, j))
        g_t = (tj, self.tangency(j, j + 1), self.center_tangency(j + 1))
        return Patch(cj, CENTER, ca, cb, f_t, g_t)


def petal_disc(t: float, r: float) -> GenCircle:
    return Circle(complex(t, -r), r)


def half_plane_petal(depth: float) -> GenCircle:
    return Line(complex(0.0, -depth), -1 + 0j)


def _make_flower(n, t, r, depths, label, trace) -> NormalizedFlower:
    petals = []
    for j in range(n):
        if j == 0:
            petals.append(C0)
        elif math.isinf(r[j]):
            petals.append(half_plane_petal(depths[j]))
        else:
            petals.append(petal_disc(t[j], r[j]))
    delta = []
    for j in range(1, n - 1):
        a, b = t[j], t[j + 1]
        delta.append(b - a if math.isfinite(a) and math.isfinite(b) else math.nan)
    return NormalizedFlower(n, tuple(t), tuple(r), tuple(petals), label,
                            tuple(trace), tuple(delta))


def geometric_label(fl: NormalizedFlower) -> ULabel:
    """The label read off the flower's patches one edge at a time."""
    return ULabel(tuple(1.0 - intrinsic_schwarzian(fl.patch(j)) for j in range(fl.n)))


class _Layout(NamedTuple):
    t: list
    r: list
    depth: list
    trace: list
    sign: int  # sign of the displacement into the last placed petal


def _develop(u: Sequence[float], count: int) -> _Layout:
    """Place c_1, ..., c_count; u[j] is u_j (u[0] unused)."""
    t = [math.inf, 0.0]
    r = [math.inf, 1.0]
    depth = [2.0, 0.0]
    trace: List[Step] = []
    sign = 1
    if count >= 2:
        t2, r2 = sit2(u[1])
        t.append(t2)
        r.append(r2)
        depth.append(0.0)
        trace.append(Step(2, "S2", 1))
    for j in range(2, count):
        uj, R, rp = u[j], r[j], r[j - 1]
        _check_u(uj)
        if math.isinf(R):
            t.append(t[j - 1] + half_plane_step(uj, rp))
            r.append(rp)
            depth.append(0.0)
            trace.append(Step(j + 1, "HP", -1))
            sign = 1
            continue
        if math.isinf(rp):
            delta = 2.0 * R / (SQ3 * uj)
            situation, out = "S2", "positive"
        elif sign > 0:
            delta, _, out = sit3(uj, rp, R)
            situation = "S3"
        else:
            delta, _ = sit4(uj, rp, R)
            situation, out = "S4", "positive"
        if out == "halfplane":
            t.append(math.inf)
            r.append(math.inf)
            depth.append(2.0 * R)
            trace.append(Step(j + 1, "HP", 0))
            continue
        sign = 1 if delta > 0 else -1
        t.append(t[j] + delta)
        r.append(delta * delta / (4.0 * R))
        depth.append(0.0)
        trace.append(Step(j + 1, situation, sign))
    return _Layout(t, r, depth, trace, sign)


def layout_flower(n: int, u_params: Sequence[float]) -> NormalizedFlower:
    """Lay out an n-flower from u_1, ..., u_{n-3}, forcing r_{n-1} = 1.

    The three remaining labels come from the forced closure: u_{n-2} in
    closed form, u_{n-1} and u_0 from the closing patches.
    """
    if n < 3:
        raise ValueError("a flower needs at least 3 petals")
    u_params = [float(x) for x in u_params]
    if len(u_params) != n - 3:
        raise ValueError(f"expected {n - 3} parameters, got {len(u_params)}")
    for x in u_params:
        _check_u(x)
    lay = _develop([0.0] + u_params, n - 2)
    t, r, depth, trace = lay.t, lay.r, lay.depth, lay.trace
    last = n - 2
    if math.isinf(r[last]):
        raise LayoutFailA(f"petal c_{last} is a half plane tangent to C at infinity")
    tn = t[last] + 2.0 * math.sqrt(r[last])
    if tn <= 0:
        raise LayoutFailB(f"t_{n - 1} = {tn:.6g} is not positive, so s_0 >= 1")
    t.append(tn)
    r.append(1.0)
    depth.append(0.0)
    trace.append(Step(n - 1, "S1", 1))
    u_n2 = r3_complete(r[last - 1], r[last], lay.sign) if last >= 2 else r3_complete(math.inf, r[last])
    provisional = ULabel(tuple([1.0] * n))
    fl = _make_flower(n, t, r, depth, provisional, trace)
    u_n1 = 1.0 - intrinsic_schwarzian(fl.patch(n - 1))
    u_0 = 1.0 - intrinsic_schwarzian(fl.patch(0))
    u = [u_0] + u_params + [u_n2, u_n1] if n > 3 else [u_0, u_n2, u_n1]
    return _make_flower(n, t, r, depth, ULabel(tuple(u)), trace)


# ---------------------------------------------------------------------------
# constraint polynomials and label completion


def constraint_C(j: int, u_prefix: Sequence[float]) -> float:
    """C_j(u_1, ..., u_{j-1}) with C_0 = 0, C_1 = 1."""
    if j < 0:
        raise ValueError("j must be non-negative")
    if len(u_prefix) < j - 1:
        raise ValueError(f"C_{j} needs {j - 1} parameters")
    pref = list(u_prefix[:max(j - 1, 0)])
    return float(_kernels.constraint_rows([pref])[0, j])


def u_fn(n: int, u_args: Sequence[float]) -> float:
    """U_n(u_1, ..., u_{n-3}) = (1 + C_{n-3}) / (sqrt(3) C_{n-2})."""
    if len(u_args) != n - 3:
        raise ValueError(f"U_{n} takes {n - 3} arguments")
    C = _kernels.constraint_rows([list(u_args)])[0]
    for j in range(2, n - 1):
        if not C[j] > 0:
            raise ConstraintViolated(j, float(C[j]))
    return float((1.0 + C[n - 3]) / (SQ3 * C[n - 2]))


def _complete_algebraic(n: int, u_params: Sequence[float]) -> ULabel:
    u = [math.nan] + list(u_params)
    u.append(u_fn(n, u[1:n - 2]))          # u_{n-2}
    u.append(u_fn(n, u[2:n - 1]))          # u_{n-1}
    u[0] = u_fn(n, u[3:n])                 # u_0
    return ULabel(tuple(u[:n]))


def complete_label(n: int, u_params: Sequence[float], method: str = "auto") -> ULabel:
    """Full label from u_1, ..., u_{n-3}.

    ``method`` is "algebraic" (closed form, un-branched only), "geometric"
    (forced layout) or "auto" (algebraic when every constraint holds).
    """
    u_params = [float(x) for x in u_params]
    for x in u_params:
        _check_u(x)
    if method == "geometric":
        return layout_flower(n, u_params).label
    if method == "algebraic":
        return _complete_algebraic(n, u_params)
    try:
        return _complete_algebraic(n, u_params)
    except ConstraintViolated:
        return layout_flower(n, u_params).label


@dataclass(frozen=True)
class Verdict:
    valid: bool
    failed: Tuple[str, ...] = ()
    residuals: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __str__(self):
        return "valid" if self.valid else "fails(" + "|".join(self.failed) + ")"


def verify_packing_label(s_label: Sequence[float], tol: float = 1e-8) -> Verdict:
    """Lay out without forcing closure and test the three closing conditions."""
    lab = ULabel.from_s(s_label)
    n, u = lab.n, lab.u
    lay = _develop(list(u), n - 1)
    t, r = lay.t, lay.r
    failed = []
    res = [math.inf, math.inf, math.inf]
    if not math.isinf(r[n - 1]):
        res[0] = abs(r[n - 1] - 1.0)
    if res[0] > tol:
        failed.append("a")
    if not (math.isinf(r[n - 1]) or math.isinf(r[n - 2])):
        want = 2.0 / (SQ3 * u[n - 1])
        res[1] = abs(t[n - 1] - t[n - 2] - want) / max(1.0, abs(want))
    if res[1] > tol:
        failed.append("b")
    if not math.isinf(r[n - 1]):
        want = 2.0 * SQ3 * u[0]
        res[2] = abs(t[n - 1] - want) / max(1.0, abs(want))
    if res[2] > tol:
        failed.append("c")
    return Verdict(not failed, tuple(failed), tuple(res))


def cyclic_ops(label: ULabel, shift: int = 0, reverse: bool = False,
               verify: bool = False) -> ULabel:
    """Reverse (optional) then shift a label; both preserve packing labels."""
    out = label.reverse() if reverse else label
    out = out.shift(shift)
    if verify:
        v = verify_packing_label(out.s)
        if not v.valid:
            raise ValueError(f"transformed label is not a packing label: {v}")
    return out


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class FlowerClass:
    kind: str  # "Univalent", "UnBranched" or "Branched"
    degree: int = 1
    violations: Tuple[str, ...] = ()

    def __str__(self):
        return f"Branched({self.degree})" if self.kind == "Branched" else self.kind


def _ccw_arc(a: complex, b: complex) -> float:
    return (math.atan2(b.imag, b.real) - math.atan2(a.imag, a.real)) % TWO_PI


def wrap_count(fl: NormalizedFlower, tol: float = 1e-6) -> int:
    """Number of times the petals wrap around the center."""
    ts = [fl.center_tangency(j) for j in range(fl.n)]
    for k in range(8):
        p = 1j * 2.0 ** k
        if any(c.contains(p) for c in fl.petals):
            continue
        w = [1 + 0j if z is INF else (z - p) / (z - p.conjugate()) for z in ts]
        arcs = [_ccw_arc(w[j], w[(j + 1) % fl.n]) for j in range(fl.n)]
        if min(arcs) < 1e-12 or max(arcs) > TWO_PI - 1e-12:
            continue
        total = sum(arcs) / TWO_PI
        d = round(total)
        if abs(total - d) < tol and d >= 1:
            return int(d)
    raise PoleOnCircle("no admissible pole for the wrap count")


def _shift_constraints(lab: ULabel) -> np.ndarray:
    """Row k holds C_0..C_{n-2} for the parameters seen from petal c_k."""
    rows = [list(lab.params(k)) for k in range(lab.n)]
    return _kernels.constraint_rows(np.array(rows, dtype=float).reshape(lab.n, lab.n - 3))


def classify_flower(fl: NormalizedFlower, tol: float = 1e-9) -> FlowerClass:
    n, lab = fl.n, fl.label
    C = _kernels.constraint_rows([list(lab.params(0))])[0]
    bad = [f"C_{j}<=0" for j in range(2, n - 1) if not C[j] > 0]
    if bad:
        return FlowerClass("Branched", wrap_count(fl), tuple(bad))
    viol = []
    lo, hi = 1.0 / SQ3, (n - 2) / SQ3
    for j, x in enumerate(lab.u):
        if x < lo - tol:
            viol.append(f"A:u_{j}<1/sqrt3")
        if x > hi + tol:
            viol.append(f"A:u_{j}>(n-2)/sqrt3")
    Ck = _shift_constraints(lab)
    for k in range(n):
        for j in range(2, n - 1):
            c = Ck[k, j]
            if not c > 0 or 1.0 / (c * c) > 1.0 + tol:
                viol.append(f"B:r_{j}(shift {k})>1")
    if viol:
        return FlowerClass("UnBranched", 1, tuple(viol))
    return FlowerClass("Univalent", 1, ())


def overlapping_pairs(fl: NormalizedFlower, tol: float = 1e-9) -> List[Tuple[int, int]]:
    """Direct geometric test: pairs of petals whose interiors meet."""
    n = fl.n
    fin = [j for j in range(n) if not fl.is_half_plane(j)]
    out = []
    if fin:
        x = np.array([fl.t[j] for j in fin])
        r = np.array([fl.r[j] for j in fin])
        ov = _kernels.disc_overlap(x, -r, r)
        for a in range(len(fin)):
            for b in range(a + 1, len(fin)):
                if ov[a, b] > tol:
                    out.append((fin[a], fin[b]))
    for h in (j for j in range(n) if fl.is_half_plane(j)):
        level = -fl.petal(h).point.imag
        for j in fin:
            if 2.0 * fl.r[j] - level > tol * fl.r[j]:
                out.append(tuple(sorted((h, j))))
        for g in (k for k in range(n) if fl.is_half_plane(k) and k > h):
            out.append((h, g))
    return sorted(out)


def is_univalent_geometric(fl: NormalizedFlower, tol: float = 1e-9) -> bool:
    return wrap_count(fl) == 1 and not overlapping_pairs(fl, tol)


# ---------------------------------------------------------------------------
# euclidean flowers


def center_angle_sum(R: float, radii: Sequence[float]) -> float:
    return _kernels.angle_sum(R, np.asarray(radii, dtype=float))


def flower_from_radii(petal_radii: Sequence[float], d: int = 1):
    """Euclidean flower with the given petals wrapping d times.

    Returns (center_radius, normalized_flower, label); petal 0 becomes c_0.
    """
    radii = np.asarray(petal_radii, dtype=float)
    n = radii.size
    if n < 3 or np.any(~(radii > 0)):
        raise InvalidRadii("need at least 3 positive radii")
    target = TWO_PI * d
    if 2 * d >= n:
        raise NoSolution(f"{n} petals cannot wrap {d} times")
    lo, hi = 1e-6 * radii.min(), 1e6 * radii.max()
    if not (center_angle_sum(lo, radii) > target > center_angle_sum(hi, radii)):
        raise NoSolution("angle sum target outside the bracket")
    R = _kernels.solve_center_radius(radii, target, lo, hi, 200)
    a = R + radii
    b = np.roll(a, -1)
    c = radii + np.roll(radii, -1)
    theta = np.arccos(np.clip((a * a + b * b - c * c) / (2 * a * b), -1, 1))
    phi = np.concatenate([[0.0], np.cumsum(theta)[:-1]])
    dirs = np.exp(1j * phi)
    petals = [Circle(complex((R + radii[j]) * dirs[j]), radii[j]) for j in range(n)]
    T = [complex(R * dirs[j]) for j in range(n)]
    q01 = tangency_point(petals[0], petals[1])
    N = mobius_from_points(T[0], T[1], q01, INF, 0, -2j)
    t = [math.inf]
    r = [math.inf]
    for j in range(1, n):
        img = apply_mobius(N, petals[j])
        t.append(N(T[j]).real)
        r.append(img.radius)
    t[1] = 0.0
    r[1] = 1.0
    fl = _make_flower(n, t, r, [2.0] + [0.0] * (n - 1), ULabel(tuple([1.0] * n)), ())
    lab = geometric_label(fl)
    fl = _make_flower(n, t, r, [2.0] + [0.0] * (n - 1), lab, ())
    return float(R), fl, lab
