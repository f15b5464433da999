"""Shared oracles for the property suites.

Everything here is deliberately naive: box enumeration instead of
slicing, pairwise domination scans instead of sorted sweeps.  Slow and
obviously correct is the point.
"""

from __future__ import annotations

import itertools
import random

import pytest

from filtmult.monomial import ideal


def brute_colength(gens, dim):
    """Count monomials outside the ideal by walking the bounding box.

    The box is closed at the per-axis pure-power exponents, which must
    exist (primary ideal); anything outside the box is inside the ideal.
    """
    bounds = []
    for ax in range(dim):
        pures = [
            g[ax]
            for g in gens
            if all(c == 0 for j, c in enumerate(g) if j != ax)
        ]
        bounds.append(min(pures))
    count = 0
    for pt in itertools.product(*(range(b) for b in bounds)):
        if not any(all(g[i] <= pt[i] for i in range(dim)) for g in gens):
            count += 1
    return count


def naive_minimalize(pts, dim):
    pts = set(map(tuple, pts))
    kept = []
    for p in pts:
        dominated = any(
            q != p and all(q[i] <= p[i] for i in range(dim)) for q in pts
        )
        if not dominated:
            kept.append(p)
    return tuple(sorted(kept))


def random_primary_gens(rng: random.Random, dim: int, max_exp: int):
    """Pure powers on every axis plus a few interior points."""
    gens = []
    for ax in range(dim):
        e = [0] * dim
        e[ax] = rng.randint(1, max_exp)
        gens.append(tuple(e))
    for _ in range(rng.randint(0, dim + 1)):
        gens.append(tuple(rng.randint(0, max_exp) for _ in range(dim)))
    return gens


def random_primary_ideal(rng: random.Random, dim: int, max_exp: int):
    I = ideal(dim, random_primary_gens(rng, dim, max_exp))
    if I.is_unit():
        # a stray all-zero interior point makes the whole ring; redraw
        return random_primary_ideal(rng, dim, max_exp)
    return I


@pytest.fixture
def rng():
    return random.Random(1729)
