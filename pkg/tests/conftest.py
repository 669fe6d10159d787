"""Shared test helpers: seeded random vector generation and reference
(oracle) norm implementations kept independent of the library code."""

import numpy as np
import pytest

from greedysum import CoefVector, SpaceSpec


def random_vector(rng, max_index=32, max_support=8, scale=1.0, distinct=False):
    """Random finitely supported vector with support drawn inside
    [1, max_index]."""
    size = int(rng.integers(1, max_support + 1))
    support = rng.choice(np.arange(1, max_index + 1), size=size, replace=False)
    coefs = {}
    for n in support:
        c = 0.0
        while c == 0.0:
            c = float(rng.normal()) * scale
        coefs[int(n)] = c
    if distinct:
        # nudge until all moduli differ bitwise
        while len({abs(c) for c in coefs.values()}) < len(coefs):
            coefs = {n: c * (1.0 + float(rng.uniform(0, 1e-6))) for n, c in coefs.items()}
    return CoefVector(coefs)


def random_tied_vector(rng, max_index=16, max_support=6):
    """Vector with deliberately repeated |coefficient| levels."""
    size = int(rng.integers(2, max_support + 1))
    support = rng.choice(np.arange(1, max_index + 1), size=size, replace=False)
    levels = [1.0, 0.5, 0.25]
    coefs = {int(n): float(rng.choice(levels)) * float(rng.choice([-1.0, 1.0]))
             for n in support}
    return CoefVector(coefs)


def oracle_summing_norm(x: CoefVector) -> float:
    """Direct enumeration of max_k |sum_{n>=k} c_n|."""
    if not x:
        return 0.0
    top = max(x.support)
    best = 0.0
    for k in range(1, top + 1):
        tail = sum(c for n, c in x.items() if n >= k)
        best = max(best, abs(tail))
    return best


def oracle_lorentz_norm(x: CoefVector, weight) -> float:
    mods = sorted((abs(c) for _, c in x.items()), reverse=True)
    return sum(m * weight(j + 1) for j, m in enumerate(mods))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def small_catalog(dim=8):
    return {
        "lp1": SpaceSpec.lp(1, dim),
        "lp2": SpaceSpec.lp(2, dim),
        "lpinf": SpaceSpec.lp("inf", dim),
        "summing_c0": SpaceSpec.summing_c0(dim),
        "lorentz_harmonic": SpaceSpec.lorentz("harmonic", dim),
        "weighted_l1_geometric": SpaceSpec.weighted_l1({"kind": "geometric", "r": 0.5}, dim),
    }
