"""Numeric inner loops, compiled with numba when available.

Set ``SFKIT_DISABLE_NUMBA=1`` to force the pure numpy versions.  Both
variants return the same numbers up to rounding; ``benchmarks/bench_kernels.py``
compares their speed.
"""

from __future__ import annotations

import math
import os

import numpy as np

SQ3 = math.sqrt(3.0)

try:  # pragma: no cover - depends on the environment
    if os.environ.get("SFKIT_DISABLE_NUMBA", "") not in ("", "0"):
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy reference versions


def angle_sum_np(R: float, radii: np.ndarray) -> float:
    a = R + radii
    b = np.roll(a, -1)
    c = radii + np.roll(radii, -1)
    cos = np.clip((a * a + b * b - c * c) / (2 * a * b), -1.0, 1.0)
    return float(np.arccos(cos).sum())


def solve_center_radius_np(radii, target, lo, hi, iters):
    radii = np.asarray(radii, dtype=float)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if angle_sum_np(mid, radii) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def constraint_rows_np(U: np.ndarray) -> np.ndarray:
    U = np.atleast_2d(np.asarray(U, dtype=float))
    m, k = U.shape
    C = np.empty((m, k + 2))
    C[:, 0] = 0.0
    C[:, 1] = 1.0
    for j in range(1, k + 1):
        C[:, j + 1] = SQ3 * U[:, j - 1] * C[:, j] - C[:, j - 1]
    return C


def disc_overlap_np(x, y, r) -> np.ndarray:
    """ov[i, j] = (r_i + r_j - |c_i - c_j|) / min(r_i, r_j); positive means overlap."""
    x, y, r = (np.asarray(v, dtype=float) for v in (x, y, r))
    d = np.hypot(x[:, None] - x[None, :], y[:, None] - y[None, :])
    return (r[:, None] + r[None, :] - d) / np.minimum(r[:, None], r[None, :])


# ---------------------------------------------------------------------------
# compiled versions


if HAVE_NUMBA:

    @njit(cache=True)
    def _angle_sum_nb(R, radii):
        n = radii.shape[0]
        tot = 0.0
        for j in range(n):
            rj = radii[j]
            rk = radii[(j + 1) % n]
            a = R + rj
            b = R + rk
            c = rj + rk
            cos = (a * a + b * b - c * c) / (2 * a * b)
            if cos > 1.0:
                cos = 1.0
            elif cos < -1.0:
                cos = -1.0
            tot += math.acos(cos)
        return tot

    @njit(cache=True)
    def _solve_center_radius_nb(radii, target, lo, hi, iters):
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            if _angle_sum_nb(mid, radii) > target:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    @njit(cache=True)
    def _constraint_rows_nb(U):
        m, k = U.shape
        C = np.empty((m, k + 2))
        for i in range(m):
            C[i, 0] = 0.0
            C[i, 1] = 1.0
            for j in range(1, k + 1):
                C[i, j + 1] = SQ3 * U[i, j - 1] * C[i, j] - C[i, j - 1]
        return C

    @njit(cache=True)
    def _disc_overlap_nb(x, y, r):
        n = x.shape[0]
        ov = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                d = math.hypot(x[i] - x[j], y[i] - y[j])
                ov[i, j] = (r[i] + r[j] - d) / min(r[i], r[j])
        return ov


def angle_sum(R: float, radii) -> float:
    radii = np.ascontiguousarray(radii, dtype=float)
    if HAVE_NUMBA:
        return float(_angle_sum_nb(float(R), radii))
    return angle_sum_np(R, radii)


def solve_center_radius(radii, target: float, lo: float, hi: float, iters: int = 200) -> float:
    radii = np.ascontiguousarray(radii, dtype=float)
    if HAVE_NUMBA:
        return float(_solve_center_radius_nb(radii, float(target), float(lo), float(hi), int(iters)))
    return solve_center_radius_np(radii, target, lo, hi, iters)


def constraint_rows(U) -> np.ndarray:
    U = np.ascontiguousarray(np.atleast_2d(np.asarray(U, dtype=float)))
    if HAVE_NUMBA:
        return _constraint_rows_nb(U)
    return constraint_rows_np(U)


def disc_overlap(x, y, r) -> np.ndarray:
    x, y, r = (np.ascontiguousarray(v, dtype=float) for v in (x, y, r))
    if HAVE_NUMBA:
        return _disc_overlap_nb(x, y, r)
    return disc_overlap_np(x, y, r)
