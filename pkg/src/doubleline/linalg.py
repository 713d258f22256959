"""Exact dense linear algebra over the rationals.

Elimination is done fraction-free: rows are cleared to integers and reduced
with the Bareiss two-step recurrence (every division is exact), then a final
normalization pass produces the reduced row echelon form with Fraction
entries.  Pivots are chosen among the nonzero candidates of a column by
smallest bit size, which keeps intermediate integers from blowing up.

Matrices are immutable values; all functions return fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import DegenerateNodesError, StructuralError, ZeroEntryError

Vector = tuple[Fraction, ...]


class RationalMatrix:
    """Dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Fraction | int]):
        if rows < 0 or cols < 0:
            raise StructuralError("matrix dimensions must be non-negative")
        if len(entries) != rows * cols:
            raise StructuralError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = tuple(Fraction(e) for e in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat: list[Fraction | int] = []
        for row in rows:
            if len(row) != ncols:
                raise StructuralError("ragged rows")
            flat.extend(row)
        return cls(nrows, ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def row_list(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def matvec(self, v: Sequence[Fraction | int]) -> Vector:
        if len(v) != self.cols:
            raise StructuralError("vector length does not match column count")
        vv = [Fraction(x) for x in v]
        return tuple(
            sum((self[i, j] * vv[j] for j in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}, {self.cols}, {list(self.entries)!r})"

    def render(self) -> str:
        return "\n".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))

    __str__ = render


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for i in range(m.rows):
        row = m.row(i)
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def rref(m: RationalMatrix) -> tuple[RationalMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form, rank, and pivot columns of ``m``."""
    work = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    pivot_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            v = work[i][c]
            if v:
                size = abs(v).bit_length()
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        if best[1] != r:
            work[r], work[best[1]] = work[best[1]], work[r]
        pivot = work[r][c]
        for i in range(r + 1, nrows):
            vi = work[i][c]
            wi, wr = work[i], work[r]
            for j in range(c, ncols):
                # Bareiss: the quotient is exact by Sylvester's identity.
                wi[j] = (pivot * wi[j] - vi * wr[j]) // prev
        prev = pivot
        pivot_cols.append(c)
        r += 1

    rank = r
    reduced = [[Fraction(x) for x in work[i]] for i in range(rank)]
    for idx in range(rank - 1, -1, -1):
        pc = pivot_cols[idx]
        pivot = reduced[idx][pc]
        reduced[idx] = [x / pivot for x in reduced[idx]]
        for i in range(idx):
            factor = reduced[i][pc]
            if factor:
                reduced[i] = [a - factor * b for a, b in zip(reduced[i], reduced[idx])]

    flat: list[Fraction] = []
    for row in reduced:
        flat.extend(row)
    flat.extend([Fraction(0)] * ((nrows - rank) * ncols))
    return RationalMatrix(nrows, ncols, flat), rank, tuple(pivot_cols)


def normalize_vector(v: Sequence[Fraction | int]) -> Vector:
    """Scale to integer entries with content 1 and positive leading entry."""
    vv = [Fraction(x) for x in v]
    if all(x == 0 for x in vv):
        return tuple(vv)
    den = lcm(*(x.denominator for x in vv))
    ints = [int(x * den) for x in vv]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def nullspace(m: RationalMatrix) -> list[Vector]:
    """Exact basis of the right kernel, one vector per free column."""
    reduced, rank, pivot_cols = rref(m)
    pivots = set(pivot_cols)
    basis: list[Vector] = []
    for fc in range(m.cols):
        if fc in pivots:
            continue
        vec = [Fraction(0)] * m.cols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            vec[pc] = -reduced[i, fc]
        basis.append(normalize_vector(vec))
    return basis


def solve(m: RationalMatrix, rhs: Sequence[Fraction | int]) -> list[Fraction] | None:
    """One exact solution of ``m x = rhs`` (free variables 0), or None."""
    if len(rhs) != m.rows:
        raise StructuralError("right-hand side length does not match row count")
    aug_rows = [m.row(i) + [Fraction(rhs[i])] for i in range(m.rows)]
    if aug_rows:
        aug = RationalMatrix.from_rows(aug_rows)
    else:
        aug = RationalMatrix(0, m.cols + 1, [])
    reduced, _, pivot_cols = rref(aug)
    if m.cols in pivot_cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, pc in enumerate(pivot_cols):
        x[pc] = reduced[i, m.cols]
    return x


@dataclass(frozen=True)
class VandermondeSystem:
    """Moment constraints sum_i c_i h_i^d = 0 for 0 <= d <= max_power."""

    nodes: tuple[Fraction, ...]
    max_power: int

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(Fraction(h) for h in self.nodes))

    def matrix(self) -> RationalMatrix:
        n = len(self.nodes)
        rows = [[h**d for h in self.nodes] for d in range(self.max_power + 1)]
        if not rows:
            return RationalMatrix(0, n, [])
        return RationalMatrix.from_rows(rows)


def _require_distinct(nodes: Sequence[Fraction]) -> None:
    seen: set[Fraction] = set()
    for h in nodes:
        if h in seen:
            raise DegenerateNodesError(f"repeated node {h}")
        seen.add(h)


def vandermonde_nullspace(system: VandermondeSystem) -> list[Vector]:
    """Basis of moment annihilators; dimension n - max_power - 1 for distinct nodes."""
    n = len(system.nodes)
    _require_distinct(system.nodes)
    if system.max_power > n - 1:
        raise StructuralError(f"max_power {system.max_power} exceeds n-1 = {n - 1}")
    return nullspace(system.matrix())


@dataclass(frozen=True)
class WeightedMomentKernel:
    """Solutions k of sum_i weights_i k_i h_i^d = 0 over a range of d."""

    weights: tuple[Fraction, ...]
    basis: tuple[Vector, ...]


def weighted_moment_kernel(
    nodes: Sequence[Fraction | int],
    weights: Sequence[Fraction | int],
    max_power: int,
) -> WeightedMomentKernel:
    """Kernel of the weighted moment map, as entrywise quotients b/weights.

    Unweighted annihilators b of the same moment range are computed first;
    each basis member is then b_i / weights_i, which requires every weight to
    be nonzero.
    """
    hs = tuple(Fraction(h) for h in nodes)
    ws = tuple(Fraction(a) for a in weights)
    if len(hs) != len(ws):
        raise StructuralError("nodes and weights must have equal length")
    _require_distinct(hs)
    for i, a in enumerate(ws):
        if a == 0:
            raise ZeroEntryError(i, f"weight {i} is zero")
    raw = vandermonde_nullspace(VandermondeSystem(hs, max_power))
    basis = tuple(tuple(b / a for b, a in zip(vec, ws)) for vec in raw)
    return WeightedMomentKernel(weights=ws, basis=basis)
