"""Shared oracles and sampling helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from hypothesis import settings

settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


def determinant(rows: list[list[Fraction]]) -> Fraction:
    """Cofactor-expansion determinant; independent of the elimination code."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    sign = 1
    for j in range(n):
        if rows[0][j]:
            minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
            total += sign * rows[0][j] * determinant(minor)
        sign = -sign
    return total


def minor_rank(rows: list[list[Fraction]]) -> int:
    """Rank as the largest size of a nonzero minor (brute force)."""
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    for k in range(min(nrows, ncols), 0, -1):
        for row_idx in combinations(range(nrows), k):
            for col_idx in combinations(range(ncols), k):
                sub = [[rows[i][j] for j in col_idx] for i in row_idx]
                if determinant(sub) != 0:
                    return k
    return 0


def node_pool(max_abs: int = 12, denominators=(1, 2, 3, 5)) -> list[Fraction]:
    pool = {Fraction(n, d) for d in denominators for n in range(-max_abs, max_abs + 1)}
    return sorted(pool)


def sample_nodes(rng: random.Random, count: int) -> tuple[Fraction, ...]:
    return tuple(rng.sample(node_pool(), count))


def random_fraction(rng: random.Random, max_abs: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(rng.randint(-max_abs, max_abs), rng.randint(1, max_den))
