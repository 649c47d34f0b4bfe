"""Face maps, discrete Schwarzian derivatives and intrinsic schwarzians.

A face is a positively oriented triple of mutually tangent circles.  Two
faces sharing an edge form a ``Patch`` {c_v, c_w | c_a, c_b} with faces
f = (c_v, c_w, c_a) and g = (c_w, c_v, c_b).  Comparing a patch with the
equilateral base patch gives its intrinsic schwarzian s, the single real
number in m_g^{-1} m_f = [[1+s, -s], [s, 1-s]].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import (InvalidFace, NonRealIncrement, NonRealSchwarzian,
                     NotParabolic, SchwarzianOutOfRange)
from .geom import (INF, Circle, ExtPoint, GenCircle, Mobius, apply_mobius,
                   mobius_from_points, normalize_mobius, tangency_point)

SQ3 = math.sqrt(3.0)
OMEGA = cmath.exp(2j * math.pi / 3)


def _cyclic_pairs(circles):
    c1, c2, c3 = circles
    return (c1, c2), (c2, c3), (c3, c1)


@dataclass(frozen=True)
class FaceTriple:
    """Three mutually tangent circles; ``tangencies`` is (t12, t23, t31)."""

    circles: Tuple[GenCircle, GenCircle, GenCircle]
    tangencies: Tuple[ExtPoint, ExtPoint, ExtPoint] = field(default=None)

    def __post_init__(self):
        if len(self.circles) != 3:
            raise InvalidFace("a face needs exactly three circles")
        if self.tangencies is None:
            tp = tuple(tangency_point(a, b) for a, b in _cyclic_pairs(self.circles))
            object.__setattr__(self, "tangencies", tp)

    def __getitem__(self, k):
        return self.circles[k]

    def rotated(self, k: int) -> "FaceTriple":
        """Cyclic relabel starting at circle k."""
        k %= 3
        return FaceTriple(self.circles[k:] + self.circles[:k],
                          self.tangencies[k:] + self.tangencies[:k])

    def mapped(self, m: Mobius) -> "FaceTriple":
        return FaceTriple(tuple(apply_mobius(m, c) for c in self.circles),
                          tuple(m(t) for t in self.tangencies))

    def interstice_point(self) -> ExtPoint:
        """Image of the base interstice center, a point inside this face's gap."""
        return face_mobius(BASE_F, self)(0j)

    def is_positive(self) -> bool:
        z = self.interstice_point()
        return not any(c.contains(z) for c in self.circles)

    def check(self) -> "FaceTriple":
        if not self.is_positive():
            raise InvalidFace("face triple is not positively oriented")
        return self


@dataclass(frozen=True)
class Patch:
    """{c_v, c_w | c_a, c_b}: faces (c_v, c_w, c_a) and (c_w, c_v, c_b)."""

    c_v: GenCircle
    c_w: GenCircle
    c_a: GenCircle
    c_b: GenCircle
    f_tangencies: Optional[tuple] = None
    g_tangencies: Optional[tuple] = None

    @property
    def f(self) -> FaceTriple:
        return FaceTriple((self.c_v, self.c_w, self.c_a), self.f_tangencies)

    @property
    def g(self) -> FaceTriple:
        return FaceTriple((self.c_w, self.c_v, self.c_b), self.g_tangencies)

    @property
    def t_e(self) -> ExtPoint:
        return self.f.tangencies[0]

    @classmethod
    def from_faces(cls, f: FaceTriple, g: FaceTriple) -> "Patch":
        return cls(f[0], f[1], f[2], g[2], f.tangencies, g.tangencies)

    def mapped(self, m: Mobius) -> "Patch":
        return Patch.from_faces(self.f.mapped(m), self.g.mapped(m))

    def reversed(self) -> "Patch":
        """The same patch seen across the edge from the other side."""
        return Patch.from_faces(self.g, self.f)


# base patch: three radius sqrt(3) circles around the origin, C_b centered at 4
C_W = Circle(2 * cmath.exp(1j * math.pi / 3), SQ3)
C_V = Circle(2 * cmath.exp(-1j * math.pi / 3), SQ3)
C_A = Circle(-2, SQ3)
C_B = Circle(4, SQ3)
BASE_F_TANGENCIES = (1 + 0j, OMEGA, OMEGA ** 2)
BASE_G_TANGENCIES = (1 + 0j, complex(5, -SQ3) / 2, complex(5, SQ3) / 2)
BASE_F = FaceTriple((C_V, C_W, C_A), BASE_F_TANGENCIES)
BASE_G = FaceTriple((C_W, C_V, C_B), BASE_G_TANGENCIES)
BASE_PATCH = Patch.from_faces(BASE_F, BASE_G)


@dataclass(frozen=True)
class EdgeDerivative:
    M: Mobius
    sigma: complex
    t_e: ExtPoint
    eta: Optional[complex]


def face_mobius(src: FaceTriple, dst: FaceTriple) -> Mobius:
    """The Mobius map carrying the tangency points of src onto those of dst."""
    return mobius_from_points(*src.tangencies, *dst.tangencies)


def _parabolic(M: Mobius) -> Mobius:
    M = normalize_mobius(M)
    if abs(M.trace ** 2 - 4) > 1e-8 * max(1.0, abs(M.b) + abs(M.c)):
        raise NotParabolic(f"trace {M.trace!r} is not +-2")
    return M


def _circle_tangent(c: GenCircle, p: complex) -> complex:
    if c.is_line:
        return c.tangent
    return 1j * (p - c.center) / abs(p - c.center)


def edge_derivative(domain: Patch, image: Patch) -> EdgeDerivative:
    """Discrete Schwarzian derivative of the map domain -> image on its edge."""
    m_f = face_mobius(domain.f, image.f)
    m_g = face_mobius(domain.g, image.g)
    M = _parabolic(m_g.inverse() @ m_f)
    sigma = M.c
    t = domain.t_e
    eta = None
    if t is not INF:
        eta = _circle_tangent(domain.c_v, t)
        a, b = domain.f.tangencies[2], domain.g.tangencies[1]
        if a is not INF and b is not INF and ((b - a) * eta.conjugate()).real < 0:
            eta = -eta
    return EdgeDerivative(M, sigma, t, eta)


def _real(z: complex, err, what: str) -> float:
    if abs(z.imag) > 1e-8 * max(1.0, abs(z)):
        raise err(f"{what} has imaginary part {z.imag:.3e}")
    return z.real


def intrinsic_matrix(p: Patch) -> Mobius:
    m_f = face_mobius(BASE_F, p.f)
    m_g = face_mobius(BASE_G, p.g)
    return _parabolic(m_g.inverse() @ m_f)


def intrinsic_schwarzian(p: Patch) -> float:
    """The real s with m_g^{-1} m_f = [[1+s, -s], [s, 1-s]]."""
    M = intrinsic_matrix(p)
    s = _real(M.c, NonRealSchwarzian, "schwarzian")
    # the remaining entries must match the model form as well
    res = max(abs(M.a - 1 - s), abs(M.b + s), abs(M.d - 1 + s))
    if res > 1e-7 * max(1.0, abs(s)):
        raise NonRealSchwarzian(f"matrix deviates from the model form by {res:.3e}")
    return s


def M_s(s: float) -> Mobius:
    return Mobius(complex(1 + s), complex(-s), complex(s), complex(1 - s))


def M_s_inv(s: float) -> Mobius:
    return Mobius(complex(1 - s), complex(s), complex(-s), complex(1 + s))


def place_face(f: FaceTriple, s: float) -> FaceTriple:
    """The neighbor face g = (c_w, c_v, c_b) across f's first edge."""
    if not s < 1:
        raise SchwarzianOutOfRange(f"schwarzian {s} must be below 1")
    m = face_mobius(BASE_F, f) @ M_s_inv(s)
    c_b = apply_mobius(m, C_B)
    tg = (f.tangencies[0], m(BASE_G_TANGENCIES[1]), m(BASE_G_TANGENCIES[2]))
    return FaceTriple((f[1], f[0], c_b), tg)


def place_by_schwarzian(f: FaceTriple, s: float) -> GenCircle:
    """The fourth circle c_b making {c_v, c_w | c_a, c_b} have schwarzian s."""
    return place_face(f, s)[2]


def schwarzian_transfer(s: float, sigma: complex, m: Mobius) -> float:
    """s' = s + sigma * m'(1), for m the normalized face map f_Delta -> f."""
    m = normalize_mobius(m)
    inc = sigma / (m.c + m.d) ** 2
    return s + _real(complex(inc), NonRealIncrement, "increment")


def chain_rule_check(domain: Patch, image: Patch, m: Mobius) -> Tuple[complex, complex]:
    """Both sides of the discrete chain rule for F composed with m.

    lhs is the derivative of F o m on the edge of m^{-1}(domain), rhs is
    sigma_F at the edge of domain times m'(tau), tau = m^{-1}(t_e).
    """
    m = normalize_mobius(m)
    pre = domain.mapped(m.inverse())
    lhs = edge_derivative(pre, image).sigma
    ed = edge_derivative(domain, image)
    tau = m.inverse()(ed.t_e)
    rhs = ed.sigma * m.derivative(tau)
    return lhs, rhs
