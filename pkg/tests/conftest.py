import cmath
import sys
import math

import numpy as np
import pytest

from sfkit.geom import Mobius, normalize_mobius
from sfkit.schwarzian import BASE_F, Patch, place_face

SQ3 = math.sqrt(3.0)


def random_mobius(rng, spread=1.0) -> Mobius:
    """Random normalized Mobius map, kept away from degenerate determinants."""
    while True:
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        a, b, c, d = a * spread, b * spread, c, d
        if abs(a * d - b * c) > 0.2:
            return normalize_mobius(Mobius(complex(a), complex(b), complex(c), complex(d)))


def random_patch(rng, s=None, m=None) -> Patch:
    """Base face moved by a random Mobius map, with g placed from a schwarzian."""
    s = rng.uniform(-2.0, 0.9) if s is None else s
    m = random_mobius(rng) if m is None else m
    f = BASE_F.mapped(m)
    return Patch.from_faces(f, place_face(f, s))


def log_uniform_radii(rng, n, lo=0.2, hi=5.0):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size=n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
