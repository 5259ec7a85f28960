"""Shared corpus generators for the test suite.

Randomized tests are seeded so that every run sees the same corpus.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from equimult.series import TruncatedSeries
from equimult.surface import WeierstrassSurface


def random_plane_poly(rng: random.Random, min_order: int, max_degree: int = 8,
                      terms: int = 3, vars=("X", "Y")) -> TruncatedSeries:
    """Random exact polynomial with every monomial of degree >= min_order."""
    table = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(min_order, max(max_degree, min_order))
        i = rng.randint(0, d)
        j = d - i
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        table[(i, j)] = table.get((i, j), Fraction(0)) + c
    table = {e: c for e, c in table.items() if c != 0}
    return TruncatedSeries(vars, table, None)


def random_surface(rng: random.Random, n: int | None = None, max_degree: int = 8,
                   force_axis: bool | None = None) -> WeierstrassSurface:
    """Random Weierstrass surface; with force_axis the monomials of a_k are
    confined to (or pushed off) the i + k >= n region."""
    n = n or rng.randint(2, 4)
    coeffs = []
    for k in range(n - 1):
        need = n - k
        table = {}
        for _ in range(rng.randint(1, 3)):
            if force_axis is True:
                i = rng.randint(need, max(max_degree - 1, need))
                j = rng.randint(0, max_degree - i)
            else:
                d = rng.randint(need, max_degree)
                i = rng.randint(0, d)
                j = d - i
            c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
            table[(i, j)] = table.get((i, j), Fraction(0)) + c
        table = {e: c for e, c in table.items() if c != 0}
        if not table:
            table = {(need, 0): Fraction(1)}
        coeffs.append(TruncatedSeries(("X", "Y"), table, None))
    return WeierstrassSurface(n, coeffs)


@pytest.fixture
def rng():
    return random.Random(20240817)
