"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed as the tests run
(visible with ``-s``) and again in the pytest terminal summary.  Run this file
directly with ``python3 tests/test_acceptance.py`` for the summary alone.
"""

import math
import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from sfkit.complexpack import (angle_sum, angle_sums, classify_vertex, layout_complex,
                               soccerball_complex, soccerball_label)
from sfkit.errors import ChartFailure
from sfkit.families import (doyle_radii, doyle_u3, ring_flower, ring_radii, ring_tangencies,
                            soccerball_labels, uniform_flower, uniform_schwarzian, uniform_u)
from sfkit.flower import (center_angle_sum, classify_flower, complete_label, constraint_C,
                          flower_from_radii, is_univalent_geometric, layout_flower, u_fn,
                          verify_packing_label, wrap_count)
from sfkit.geom import apply_mobius, tangency_point
from sfkit.schwarzian import (BASE_F, chain_rule_check, edge_derivative, face_mobius,
                              intrinsic_schwarzian, schwarzian_transfer)

sys.path.insert(0, os.path.dirname(__file__))
from conftest import SQ3, log_uniform_radii, random_mobius, random_patch  # noqa: E402
from test_flower import random_unbranched_params  # noqa: E402

RESULTS = {}
SEED = 1729


def record(num, title, checks):
    """checks: list of (description, ok, detail)."""
    ok = all(c[1] for c in checks)
    parts = "; ".join(f"{d}: {'ok' if o else 'FAIL'} ({x})" for d, o, x in checks)
    line = f"{'PASS' if ok else 'FAIL'} criterion {num:2d} [{title}] {parts}"
    RESULTS[num] = line
    print(line)
    assert ok, line


# 1


def test_criterion_01_uniform_constants():
    table = [(3, 0.422650), (4, 0.183503), (5, 0.065828), (6, 0.0),
             (9, -0.085064), (12, -0.115355), (20, -0.140485), (50, -0.152422)]
    worst = max(abs(uniform_schwarzian(n) - v) for n, v in table)
    record(1, "uniform constants", [("max |s_n - table|", worst < 1e-6, f"{worst:.2e} < 1e-6")])


# 2


def test_criterion_02_three_and_four_flowers():
    rng = np.random.default_rng(SEED)
    s3 = 1 - 1 / SQ3
    fl3 = layout_flower(3, ())
    e3 = max(abs(intrinsic_schwarzian(fl3.patch(j)) - s3) for j in range(3))
    for _ in range(50):
        m = random_mobius(rng)
        e3 = max(e3, max(abs(intrinsic_schwarzian(fl3.patch(j).mapped(m)) - s3) for j in range(3)))
    e4, mismatch = 0.0, 0
    lo, hi = 1 - 2 / SQ3, 1 - 1 / SQ3
    for _ in range(200):
        u1 = math.exp(rng.uniform(math.log(0.2), math.log(3.4)))
        fl = layout_flower(4, (u1,))
        lab = fl.label
        for j in range(4):
            e4 = max(e4, abs(lab[j] * lab[j + 1] - 2 / 3))
        inside = all(lo - 1e-12 <= s <= hi + 1e-12 for s in lab.s)
        uni = classify_flower(fl).kind == "Univalent"
        mismatch += (uni != inside) + (is_univalent_geometric(fl) != inside)
    record(2, "3-flower / 4-flower laws", [
        ("3-flower schwarzians", e3 < 1e-9, f"{e3:.2e} < 1e-9"),
        ("(1-s)(1-s')=2/3", e4 < 1e-9, f"{e4:.2e} < 1e-9"),
        ("univalent iff s,s' in range", mismatch == 0, f"{mismatch} mismatches / 200"),
    ])


# 3


def test_criterion_03_round_trip():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(500):
        n = int(rng.integers(4, 13))
        _, fl, lab = flower_from_radii(log_uniform_radii(rng, n))
        back = layout_flower(n, lab.params(0))
        for j in range(1, n):
            worst = max(worst, abs(back.r[j] - fl.r[j]) / fl.r[j],
                        abs(back.t[j] - fl.t[j]) / max(1.0, abs(fl.t[j])))
    record(3, "round trip", [("500 flowers, worst relative", worst < 1e-8, f"{worst:.2e} < 1e-8")])


# 4


def test_criterion_04_layout_formulas():
    rng = np.random.default_rng(SEED)
    worst = {"qr": 0.0, "rur": 0.0, "2srR": 0.0, "ftnl": 0.0, "U_n cyclic": 0.0}
    for i in range(300):
        n = int(rng.integers(5, 13))
        fl = random_unbranched_params(rng, n, max_spread=100)
        t, r, u = fl.t, fl.r, fl.label
        C = [constraint_C(j, u.params(0)) for j in range(n - 1)]

        def rel(a, b):
            return abs(a - b) / max(1.0, abs(b))

        for j in range(3, n):
            qr = SQ3 * u[j - 1] / math.sqrt(r[j - 1]) - 1 / math.sqrt(r[j - 2])
            worst["qr"] = max(worst["qr"], rel(1 / math.sqrt(r[j]), qr))
        for j in range(2, n - 2):
            rur = (math.sqrt(r[j] / r[j - 1]) + math.sqrt(r[j] / r[j + 1])) / SQ3
            worst["rur"] = max(worst["rur"], rel(u[j], rur))
        for j in range(1, n - 1):
            worst["2srR"] = max(worst["2srR"], rel(t[j + 1] - t[j], 2 * math.sqrt(r[j] * r[j + 1])))
        for j in range(3, n - 2):
            worst["ftnl"] = max(worst["ftnl"], rel(C[j + 1], SQ3 * u[j] * C[j] - C[j - 1]))
        for j in range(n):
            prev = [u[j - n + 3 + k] for k in range(n - 3)]
            worst["U_n cyclic"] = max(worst["U_n cyclic"], rel(u[j], u_fn(n, prev)))
    record(4, "layout formulas", [(k, v < 1e-9, f"{v:.2e} < 1e-9") for k, v in worst.items()])


# 5


def test_criterion_05_univalence_theorem():
    rng = np.random.default_rng(SEED)
    mismatch, univalent = 0, 0
    for _ in range(1000):
        n = int(rng.integers(4, 13))
        fl = random_unbranched_params(rng, n)
        a = classify_flower(fl).kind == "Univalent"
        b = is_univalent_geometric(fl)
        univalent += a
        mismatch += a != b
    record(5, "univalence theorem", [
        ("(A)+(B) vs disjointness oracle", mismatch == 0,
         f"{mismatch} mismatches / 1000, {univalent} univalent")])


# 6


def test_criterion_06_schwarzian_calculus():
    rng = np.random.default_rng(SEED)
    w = {"mobius invariance": 0.0, "post-composition": 0.0, "antisymmetry": 0.0,
         "transfer law": 0.0, "chain rule": 0.0}
    for _ in range(150):
        dom, img, m = random_patch(rng), random_patch(rng), random_mobius(rng)
        s = intrinsic_schwarzian(dom)
        w["mobius invariance"] = max(w["mobius invariance"],
                                     abs(intrinsic_schwarzian(dom.mapped(m)) - s))
        ed = edge_derivative(dom, img)
        scale = max(1.0, abs(ed.sigma))
        post = edge_derivative(dom, img.mapped(random_mobius(rng))).sigma
        w["post-composition"] = max(w["post-composition"], abs(post - ed.sigma) / scale)
        rev = edge_derivative(dom.reversed(), img.reversed()).sigma
        w["antisymmetry"] = max(w["antisymmetry"], abs(rev + ed.sigma) / scale)
        got = schwarzian_transfer(s, ed.sigma, face_mobius(BASE_F, dom.f))
        w["transfer law"] = max(w["transfer law"], abs(got - intrinsic_schwarzian(img)))
        lhs, rhs = chain_rule_check(dom, img, m)
        w["chain rule"] = max(w["chain rule"], abs(lhs - complex(rhs)) / max(1.0, abs(lhs)))
    record(6, "schwarzian calculus", [(k, v < 1e-8, f"{v:.2e} < 1e-8") for k, v in w.items()])


# 7


def test_criterion_07_doyle():
    rng = np.random.default_rng(SEED)
    e_angle, e_period, e_law = 0.0, 0.0, 0.0
    for _ in range(100):
        a, b = rng.uniform(0.3, 3.0, size=2)
        radii = doyle_radii(a, b)
        e_angle = max(e_angle, abs(center_angle_sum(1.0, radii) - 2 * math.pi))
        _, _, lab = flower_from_radii(radii)
        u = lab.u
        e_period = max(e_period, max(abs(u[j] - u[j + 3]) for j in range(3)))
        for j in range(3):
            e_law = max(e_law, abs(u[j] - doyle_u3(u[j + 1], u[(j + 2) % 6])))
    record(7, "Doyle", [
        ("angle sum at R=1", e_angle < 1e-9, f"{e_angle:.2e} < 1e-9"),
        ("period 3", e_period < 1e-9, f"{e_period:.2e} < 1e-9"),
        ("u3=(u1+u2)/(3u1u2-1)", e_law < 1e-9, f"{e_law:.2e} < 1e-9"),
    ])


# 8


def test_criterion_08_ring():
    r = ring_radii(24)
    e_rec = max(abs(1 / math.sqrt(r[j + 1]) - 1 / math.sqrt(r[j]) - 1 / math.sqrt(r[j - 1]))
                * math.sqrt(r[j + 1]) for j in range(2, 23))
    fib = [0, 1]
    while len(fib) < 20:
        fib.append(fib[-1] + fib[-2])
    tg = ring_tangencies(17)
    fib_ok = all(tg[j] == Fraction(fib[j], fib[j + 1]) for j in range(1, 16))
    golden_sq = (1 + math.sqrt(5)) ** 2 / 4
    e_ratio = abs(r[20] / r[21] - golden_sq)
    vals = (1 - SQ3, 1 - 1 / SQ3, 1 - 2 / SQ3)
    e_lab = 0.0
    for n in range(3, 17):
        for s in ring_flower(n).label.s:
            e_lab = max(e_lab, min(abs(s - v) for v in vals))
    record(8, "ring", [
        ("reciprocal-root recurrence", e_rec < 1e-12, f"{e_rec:.2e}"),
        ("tangencies F_j/F_{j+1}, j<=15", fib_ok, "exact rationals"),
        ("ratio -> golden^2 by j=20", e_ratio < 1e-6, f"{e_ratio:.2e} < 1e-6"),
        ("labels in {1-sqrt3, 1-1/sqrt3, 1-2/sqrt3}", e_lab < 1e-9, f"{e_lab:.2e} < 1e-9"),
    ])


# 9


def test_criterion_09_soccerball():
    """Run exactly as stated, with the reciprocal (u u' = 1) label values.

    Expected outcome: parts (a) and (c) are red.
    The u u' = 1 partner does not close the degree-6 flowers of this complex,
    whose pattern is (s, s', s', s, s', s'), and s = -0.321284 puts u above
    2/sqrt3 so the degree-5 holonomy is not elliptic.
    """
    K = soccerball_complex()
    lay = layout_complex(K, soccerball_label(K, *soccerball_labels(False)))
    hmax = lay.max_holonomy
    sums = angle_sums(lay)
    e_sum = max(abs(x - 2 * math.pi) for x in sums.values())

    layB = layout_complex(K, soccerball_label(K, *soccerball_labels(True)))
    e5 = max(abs(angle_sum(layB, v) - 4 * math.pi) for v in range(12))
    cls5 = {str(classify_vertex(K, layB.label, v)) for v in range(12)}

    s = -0.321284
    layC = layout_complex(K, soccerball_label(K, s, 1 - 1 / (1 - s)))
    try:
        cone = [angle_sum(layC, v, symmetric=True) for v in range(12)]
        e_cone = max(abs(x - 3 * math.pi) for x in cone)
        cone_detail = f"max |gamma - 3pi| = {e_cone:.2e}"
    except ChartFailure as exc:
        e_cone, cone_detail = math.inf, f"no symmetric chart: {exc}"
    record(9, "soccerball packings", [
        ("(a) maximal labels holonomy < 1e-6", hmax < 1e-6, f"{hmax:.3e}"),
        ("(a) maximal labels angle sums 2pi", e_sum < 1e-6, f"max dev {e_sum:.3e}"),
        ("(b) branched labels degree-5 sums 4pi", e5 < 1e-6, f"{e5:.2e}"),
        ("(b) branched labels degree-5 Branched(2)", cls5 == {"Branched(2)"}, ",".join(sorted(cls5))),
        ("(c) s=-0.321284 cone 3pi", e_cone < 1e-3, cone_detail),
    ])


# 10


def test_criterion_10_branched_handling():
    checks = []
    for name, fl in (("branched 5-flower", uniform_flower(5, 2)),
                     ("branched 7-flower", uniform_flower(7, 2))):
        kinds = {(st.situation, st.sign) for st in fl.trace}
        # the 7-flower must switch between sit3 and sit4 while it wraps
        alternating = fl.n == 5 or {("S3", -1), ("S4", 1)} <= kinds
        d = wrap_count(fl)
        v = verify_packing_label(fl.label.s)
        checks.append((f"{name} wrap 2, valid", d == 2 and v.valid and alternating,
                       f"wrap={d}, {v}, trace={'/'.join(s.situation for s in fl.trace)}"))
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(4, 13))
        p = random_unbranched_params(rng, n, max_spread=100).label.params(0)
        a, g = complete_label(n, p, "algebraic"), complete_label(n, p, "geometric")
        worst = max(worst, max(abs(x - y) / max(1.0, abs(y)) for x, y in zip(a.u, g.u)))
    checks.append(("algebraic vs geometric completion", worst < 1e-9, f"{worst:.2e} < 1e-9"))
    record(10, "branched handling", checks)


# 11


def _cli(cwd, *argv):
    out = subprocess.run([sys.executable, "-m", "sfkit", *argv], capture_output=True, cwd=cwd)
    return out.returncode, out.stdout


def test_criterion_11_determinism(tmp_path):
    blobs = []
    for k in range(2):
        d = tmp_path / str(k)
        d.mkdir()
        runs = [
            _cli(d, "random-flower", "--n", "11", "--seed", "42", "--out", "r.txt", "--svg", "r.svg"),
            _cli(d, "layout", "--n", "7", "--u", "0.9,1.1,1.2,0.8", "--out", "l.txt", "--svg", "l.svg"),
            _cli(d, "pack", "--complex", "soccerball", "--labels", "auto:unbranched",
                 "--svg", "p.svg"),
        ]
        files = {p.name: p.read_bytes() for p in sorted(d.iterdir())}
        blobs.append((runs, files))
    same = blobs[0] == blobs[1]
    codes = [c for c, _ in blobs[0][0]]
    record(11, "determinism", [
        ("byte-identical files and stdout", same and codes == [0, 0, 0],
         f"{len(blobs[0][1])} files, exit codes {codes}")])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
