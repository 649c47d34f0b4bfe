"""Time the compiled kernels against their numpy versions.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import math
import time

import numpy as np

from sfkit import _kernels as K


def best_of(fn, repeat):
    fn()  # warm up (and compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)

    U = rng.uniform(0.3, 2.0, size=(20000, 12))
    radii = rng.uniform(0.2, 5.0, size=400)
    x, y, r = rng.normal(size=600), rng.normal(size=600), rng.uniform(0.05, 0.3, size=600)

    cases = [
        ("constraint_rows 20000x12", lambda: K.constraint_rows(U), lambda: K.constraint_rows_np(U)),
        ("solve_center_radius n=400",
         lambda: K.solve_center_radius(radii, 2 * math.pi, 1e-3, 1e4, 200),
         lambda: K.solve_center_radius_np(radii, 2 * math.pi, 1e-3, 1e4, 200)),
        ("disc_overlap 600 discs", lambda: K.disc_overlap(x, y, r), lambda: K.disc_overlap_np(x, y, r)),
    ]
    print(f"numba available: {K.HAVE_NUMBA}")
    print(f"{'kernel':30s} {'dispatch [ms]':>14s} {'numpy [ms]':>12s} {'speedup':>8s}")
    for name, fast, ref in cases:
        a, b = best_of(fast, args.repeat), best_of(ref, args.repeat)
        print(f"{name:30s} {1e3 * a:14.3f} {1e3 * b:12.3f} {b / a:8.1f}")


if __name__ == "__main__":
    main()
