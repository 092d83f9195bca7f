"""Shared fixtures-by-import for the test modules."""

from __future__ import annotations

import random

from gcf.field import Field
from gcf.matrix import Matrix
from gcf.poly import Poly

F2 = Field(2)
F3 = Field(3)
F4 = Field(2, 2)
F5 = Field(5)


def P(F: Field, text: str) -> Poly:
    return Poly.parse(F, text)


def rand_poly(F: Field, deg: int, rng: random.Random, monic: bool = False) -> Poly:
    """Uniform polynomial of exact degree ``deg`` (``deg < 0`` gives zero)."""
    if deg < 0:
        return Poly.zero(F)
    lead = 1 if monic else rng.randrange(1, F.q)
    return Poly(F, [rng.randrange(F.q) for _ in range(deg)] + [lead])


def rand_below(F: Field, n: int, rng: random.Random) -> Poly:
    """Uniform polynomial of degree < n, zero included."""
    return Poly(F, [rng.randrange(F.q) for _ in range(n)])


def rand_matrix(F: Field, n: int, rng: random.Random) -> Matrix:
    return Matrix(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)])


def rand_invertible(F: Field, n: int, rng: random.Random) -> Matrix:
    while True:
        M = rand_matrix(F, n, rng)
        if M.rank() == n:
            return M
