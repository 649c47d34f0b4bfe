"""Triangulations, schwarzian-driven layout and packing diagnostics.

A complex is given by positively oriented vertex triples.  Laying it out
starts from a base face and walks a breadth-first spanning tree of the dual
graph, placing each new circle from the schwarzian on the edge crossed.
Dual edges left out of the tree are used to measure holonomy: the circle
predicted across such an edge is compared with the one already placed.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import (ChartFailure, ComplexError, NonManifold, NotSimplyConnected,
                     OrientationMismatch, SchwarzianOutOfRange)
from .flower import FlowerClass, Verdict, ULabel, classify_flower, layout_flower, verify_packing_label
from .geom import GenCircle, Mobius, circle_distance, normalize_mobius, unit_disc_chart
from .schwarzian import BASE_F, FaceTriple, Patch, face_mobius, intrinsic_schwarzian, place_face

Edge = Tuple[int, int]


def _key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, eq=False)
class TriComplex:
    n_vertices: int
    faces: Tuple[Tuple[int, int, int], ...]
    face_of: Mapping[Edge, int]          # directed edge -> face containing it
    edges: Tuple[Edge, ...]
    interior_edges: Tuple[Edge, ...]
    boundary_vertices: frozenset
    stars: Mapping[int, Tuple[int, ...]]  # petals in positive order

    @property
    def euler(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.faces)

    @property
    def is_sphere(self) -> bool:
        return not self.boundary_vertices

    def degree(self, v: int) -> int:
        return len(self.stars[v]) - (1 if v in self.boundary_vertices else 0)

    def interior_vertices(self) -> List[int]:
        return [v for v in range(self.n_vertices) if v not in self.boundary_vertices]

    def third(self, a: int, b: int) -> int:
        """Vertex opposite the directed edge (a, b)."""
        f = self.faces[self.face_of[(a, b)]]
        i = f.index(a)
        return f[(i + 2) % 3]


def build_complex(faces: Iterable[Sequence[int]], n_vertices: Optional[int] = None) -> TriComplex:
    """Validate an oriented face list and derive edges, boundary and stars."""
    fs = [tuple(int(x) for x in f) for f in faces]
    if not fs:
        raise ComplexError("empty complex")
    V = n_vertices if n_vertices is not None else max(max(f) for f in fs) + 1
    seen_sets = set()
    face_of: Dict[Edge, int] = {}
    count: Dict[Edge, int] = {}
    for k, f in enumerate(fs):
        if len(f) != 3 or len(set(f)) != 3:
            raise ComplexError(f"face {k} = {f} is not a triangle")
        if min(f) < 0 or max(f) >= V:
            raise ComplexError(f"face {k} references a vertex outside 0..{V - 1}")
        vs = frozenset(f)
        if vs in seen_sets:
            raise NonManifold(f"two faces share all three vertices {sorted(vs)}")
        seen_sets.add(vs)
        for i in range(3):
            e = (f[i], f[(i + 1) % 3])
            count[_key(*e)] = count.get(_key(*e), 0) + 1
            if e in face_of:
                if count[_key(*e)] > 2:
                    raise NonManifold(f"edge {_key(*e)} lies in more than two faces")
                raise OrientationMismatch(f"edge {e} has the same direction in two faces")
            face_of[e] = k
    for e, c in count.items():
        if c > 2:
            raise NonManifold(f"edge {e} lies in more than two faces")
    used = set(itertools.chain.from_iterable(fs))
    if len(used) != V:
        raise ComplexError("some vertices belong to no face")
    edges = tuple(sorted(count))
    interior = tuple(e for e in edges if count[e] == 2)
    bverts = set()
    for e in edges:
        if count[e] == 1:
            bverts.update(e)
    # links: successor map around each vertex
    succ: Dict[int, Dict[int, int]] = {v: {} for v in range(V)}
    for f in fs:
        for i in range(3):
            succ[f[i]][f[(i + 1) % 3]] = f[(i + 2) % 3]
    stars = {}
    for v in range(V):
        s = succ[v]
        preds = set(s.values())
        starts = [a for a in s if a not in preds]
        if v in bverts:
            if len(starts) != 1:
                raise NonManifold(f"vertex {v} has a pinched link")
            a = starts[0]
        else:
            if starts:
                raise NonManifold(f"vertex {v} has an inconsistent link")
            a = min(s, key=lambda x: face_of[(v, x)])
        chain = [a]
        while chain[-1] in s and len(chain) <= len(s):
            nxt = s[chain[-1]]
            if nxt == a:
                break
            chain.append(nxt)
        need = len(s) + (1 if v in bverts else 0)
        if len(chain) != need:
            raise NonManifold(f"vertex {v} has a disconnected link")
        if v not in bverts and len(chain) < 3:
            raise NonManifold(f"interior vertex {v} has degree {len(chain)}")
        stars[v] = tuple(chain)
    K = TriComplex(V, tuple(fs), face_of, edges, interior, frozenset(bverts), stars)
    # connectivity through the dual graph
    seen = {0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        f = fs[k]
        for i in range(3):
            g = face_of.get((f[(i + 1) % 3], f[i]))
            if g is not None and g not in seen:
                seen.add(g)
                queue.append(g)
    if len(seen) != len(fs):
        raise NotSimplyConnected("complex is not connected")
    chi = K.euler
    if chi != (2 if K.is_sphere else 1):
        raise NotSimplyConnected(f"Euler characteristic {chi} is not that of a sphere or disc")
    return K


# ---------------------------------------------------------------------------
# built-in complexes


def octahedron_complex() -> TriComplex:
    faces = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
             (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)]
    return build_complex(faces, 6)


def _icosahedron() -> Tuple[np.ndarray, List[Tuple[int, int, int]]]:
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for a, b in [(1, phi), (-1, phi), (1, -phi), (-1, -phi)]:
        pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    P = np.array(pts, dtype=float)
    P /= np.linalg.norm(P, axis=1)[:, None]
    gram = P @ P.T
    near = gram.max(where=~np.eye(12, dtype=bool), initial=-2)
    adj = np.abs(gram - near) < 1e-9
    faces = []
    for i, j, k in itertools.combinations(range(12), 3):
        if adj[i, j] and adj[j, k] and adj[i, k]:
            if np.dot(np.cross(P[j] - P[i], P[k] - P[i]), P[i]) < 0:
                j, k = k, j
            faces.append((i, j, k))
    return P, faces


def soccerball_complex() -> TriComplex:
    """Icosahedron with every face split in four: 42 vertices, 80 faces.

    Vertices 0..11 are the icosahedron's (degree 5), 12..41 the edge
    midpoints (degree 6).
    """
    _, ico = _icosahedron()
    mid: Dict[Edge, int] = {}

    def m(a, b):
        k = _key(a, b)
        if k not in mid:
            mid[k] = 12 + len(mid)
        return mid[k]

    faces = []
    for a, b, c in ico:
        ab, bc, ca = m(a, b), m(b, c), m(c, a)
        faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
    return build_complex(faces, 42)


def soccerball_positions() -> np.ndarray:
    """Unit-sphere positions matching soccerball_complex vertex numbering."""
    P, ico = _icosahedron()
    out = list(P)
    seen = set()
    for a, b, c in ico:
        for x, y in ((a, b), (b, c), (c, a)):
            k = _key(x, y)
            if k not in seen:
                seen.add(k)
                q = P[x] + P[y]
                out.append(q / np.linalg.norm(q))
    return np.array(out)


# ---------------------------------------------------------------------------
# labels


class EdgeLabel(dict):
    """Schwarzian per interior edge, keyed by sorted vertex pairs."""

    def s(self, a: int, b: int) -> float:
        return self[_key(a, b)]

    @classmethod
    def from_function(cls, K: TriComplex, fn: Callable[[int, int], float]) -> "EdgeLabel":
        return cls({e: float(fn(*e)) for e in K.interior_edges})

    def check(self, K: TriComplex) -> "EdgeLabel":
        for e in K.interior_edges:
            if e not in self:
                raise ComplexError(f"interior edge {e} has no schwarzian")
            if not self[e] < 1:
                raise SchwarzianOutOfRange(f"s{e} = {self[e]} must be below 1")
        return self


def soccerball_label(K: TriComplex, s56: float, s66: float) -> EdgeLabel:
    return EdgeLabel.from_function(
        K, lambda a, b: s66 if K.degree(a) == 6 and K.degree(b) == 6 else s56)


def labels_from_circles(K: TriComplex, circles: Mapping[int, GenCircle]) -> EdgeLabel:
    """Intrinsic schwarzians of an existing packing, one per interior edge."""
    out = EdgeLabel()
    for a, b in K.interior_edges:
        x = K.third(a, b)
        y = K.third(b, a)
        out[(a, b)] = intrinsic_schwarzian(Patch(circles[a], circles[b], circles[x], circles[y]))
    return out


def flower_schwarzians(K: TriComplex, label: EdgeLabel, v: int) -> List[float]:
    """Edge schwarzians around an interior vertex, in petal order."""
    if v in K.boundary_vertices:
        raise ValueError(f"vertex {v} is on the boundary")
    return [label.s(v, p) for p in K.stars[v]]


def check_packing_label(K: TriComplex, label: EdgeLabel) -> Dict[int, Verdict]:
    label.check(K)
    return {v: verify_packing_label(flower_schwarzians(K, label, v)) for v in K.interior_vertices()}


def classify_vertex(K: TriComplex, label: EdgeLabel, v: int) -> FlowerClass:
    lab = ULabel.from_s(flower_schwarzians(K, label, v))
    return classify_flower(layout_flower(lab.n, lab.params()))


# ---------------------------------------------------------------------------
# layout


@dataclass(frozen=True)
class DualTree:
    root: int
    order: Tuple[int, ...]
    parent: Tuple[int, ...]
    tree_edges: Tuple[Tuple[int, int, Edge], ...]   # (parent, child, directed edge in parent)
    non_tree: Tuple[Tuple[int, int, Edge], ...]     # (f, g, directed edge in f)


def dual_spanning_tree(K: TriComplex, root_face: int = 0) -> DualTree:
    nf = len(K.faces)
    parent = [-1] * nf
    seen = [False] * nf
    seen[root_face] = True
    order = [root_face]
    tree = []
    used = set()
    queue = deque([root_face])
    while queue:
        f = queue.popleft()
        fv = K.faces[f]
        for i in range(3):
            x, y = fv[i], fv[(i + 1) % 3]
            g = K.face_of.get((y, x))
            if g is None or seen[g]:
                continue
            seen[g] = True
            parent[g] = f
            order.append(g)
            tree.append((f, g, (x, y)))
            used.add(_key(x, y))
            queue.append(g)
    non_tree = []
    for e in K.interior_edges:
        if e not in used:
            a, b = e
            non_tree.append((K.face_of[(a, b)], K.face_of[(b, a)], (a, b)))
    return DualTree(root_face, tuple(order), tuple(parent), tuple(tree), tuple(non_tree))


@dataclass(frozen=True)
class HolonomyEntry:
    f: int
    g: int
    edge: Edge
    discrepancy: float


@dataclass(frozen=True, eq=False)
class PackingLayout:
    complex: TriComplex
    label: EdgeLabel
    placements: Tuple[FaceTriple, ...]      # circles in each face's vertex order
    vertex_circles: Mapping[int, GenCircle]
    holonomy: Tuple[HolonomyEntry, ...]
    tree: DualTree

    @property
    def max_holonomy(self) -> float:
        return max((h.discrepancy for h in self.holonomy), default=0.0)


def _rot_to(ft: FaceTriple, face: Sequence[int], v: int) -> FaceTriple:
    return ft.rotated(list(face).index(v))


def _across(ft_f: FaceTriple, face: Sequence[int], x: int, s: float) -> FaceTriple:
    """Face across the directed edge (x, y) of ``face``, ordered (y, x, b)."""
    return place_face(_rot_to(ft_f, face, x), s)


def layout_complex(K: TriComplex, label: EdgeLabel, base: FaceTriple = BASE_F,
                   root_face: int = 0) -> PackingLayout:
    """Place every face from the root face outwards along the dual tree."""
    label.check(K)
    tree = dual_spanning_tree(K, root_face)
    place: List[Optional[FaceTriple]] = [None] * len(K.faces)
    place[root_face] = base
    for f, g, (x, y) in tree.tree_edges:
        new = _across(place[f], K.faces[f], x, label.s(x, y))
        place[g] = new.rotated(-list(K.faces[g]).index(y) % 3)
    holo = []
    for f, g, (x, y) in tree.non_tree:
        pred = _across(place[f], K.faces[f], x, label.s(x, y))
        have = _rot_to(place[g], K.faces[g], y)
        err = max(circle_distance(a, b) for a, b in zip(pred.circles, have.circles))
        holo.append(HolonomyEntry(f, g, (x, y), err))
    vc: Dict[int, GenCircle] = {}
    for f in tree.order:
        for v, c in zip(K.faces[f], place[f].circles):
            vc.setdefault(v, c)
    return PackingLayout(K, label, tuple(place), vc, tuple(holo), tree)


def map_layout(layout: PackingLayout, m: Mobius) -> PackingLayout:
    place = tuple(ft.mapped(m) for ft in layout.placements)
    vc = {}
    for f in layout.tree.order:
        for v, c in zip(layout.complex.faces[f], place[f].circles):
            vc.setdefault(v, c)
    return PackingLayout(layout.complex, layout.label, place, vc, layout.holonomy, layout.tree)


# ---------------------------------------------------------------------------
# angle sums


def _develop_star(layout: PackingLayout, v: int) -> List[FaceTriple]:
    """Faces (v, p_k, p_{k+1}) for k = 0..n, developed from the layout's first face."""
    K = layout.complex
    petals = K.stars[v]
    n = len(petals)
    f0 = K.face_of[(v, petals[0])]
    cur = _rot_to(layout.placements[f0], K.faces[f0], v)
    out = [cur]
    for k in range(n):
        s = layout.label.s(v, petals[(k + 1) % n])
        cur = place_face(cur.rotated(2), s)
        out.append(cur)
    return out


def _ccw(a: complex, b: complex) -> float:
    return (math.atan2(b.imag, b.real) - math.atan2(a.imag, a.real)) % (2 * math.pi)


def vertex_holonomy(layout: PackingLayout, v: int) -> Mobius:
    faces = _develop_star(layout, v)
    return face_mobius(faces[0], faces[-1])


def angle_sum(layout: PackingLayout, v: int, symmetric: bool = False) -> float:
    """Sum of the face angles at v in a chart making v's circle the unit circle.

    The star of v is developed from the label, so a cone point shows up as an
    angle sum off the multiples of 2 pi.  With ``symmetric`` the chart is
    centered at the fixed point of the holonomy around v, which makes the
    flower of a uniformly labelled cone point rotationally symmetric.
    """
    K = layout.complex
    if v in K.boundary_vertices:
        raise ValueError(f"vertex {v} is on the boundary")
    faces = _develop_star(layout, v)
    cv = faces[0][0]
    try:
        T = unit_disc_chart(cv)
    except Exception as exc:  # pragma: no cover - degenerate circles only
        raise ChartFailure(str(exc)) from exc
    if symmetric:
        H = normalize_mobius(T @ face_mobius(faces[0], faces[-1]) @ T.inverse())
        if not H.allclose(Mobius.identity(), 1e-10):
            q = _interior_fixed_point(H)
            if q is None:
                raise ChartFailure(f"holonomy at vertex {v} has no fixed point inside its circle")
            T = Mobius(1 + 0j, -q, -q.conjugate(), 1 + 0j) @ T
    total = 0.0
    for ft in faces[:-1]:
        a, b = T(ft.tangencies[0]), T(ft.tangencies[2])
        total += _ccw(a, b)
    return total


def _interior_fixed_point(H: Mobius) -> Optional[complex]:
    a, b, c, d = H.a, H.b, H.c, H.d
    if abs(c) < 1e-14:
        if abs(a - d) < 1e-14:
            return None
        z = b / (d - a)
        return z if abs(z) < 1 else None
    disc = np.sqrt(complex((d - a) ** 2 + 4 * b * c))
    roots = [(a - d + disc) / (2 * c), (a - d - disc) / (2 * c)]
    inside = [complex(z) for z in roots if abs(z) < 1 - 1e-12]
    return inside[0] if inside else None


def angle_sums(layout: PackingLayout, vertices: Optional[Iterable[int]] = None,
               symmetric: bool = False) -> Dict[int, float]:
    vs = layout.complex.interior_vertices() if vertices is None else vertices
    return {v: angle_sum(layout, v, symmetric) for v in vs}
