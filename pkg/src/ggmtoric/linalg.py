"""Exact linear algebra over the rationals (sparse rows, Fraction arithmetic)."""

from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

SparseRow = dict


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of Q^(columns).

    Column labels only need to be mutually comparable.  Each stored row has
    its pivot as smallest column and a unit pivot coefficient.
    """

    def __init__(self):
        self._pivots: list = []
        self._rows: dict = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row: Mapping[Hashable, object]) -> SparseRow:
        r = {c: Fraction(v) for c, v in row.items() if v}
        if not r:
            return r
        lo = min(r)
        start = bisect.bisect_left(self._pivots, lo)
        for p in self._pivots[start:]:
            f = r.get(p)
            if not f:
                continue
            for c, v in self._rows[p].items():
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
            if not r:
                break
        return r

    def add(self, row: Mapping[Hashable, object]) -> bool:
        """Insert ``row``; returns True when it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        bisect.insort(self._pivots, p)
        self._rows[p] = r
        return True

    def contains(self, row: Mapping[Hashable, object]) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Mapping[Hashable, object] | Sequence]) -> int:
    """Rank over Q of dense (sequence) or sparse (mapping) rows."""
    eb = EchelonBasis()
    for row in rows:
        eb.add(_as_sparse(row))
    return eb.rank


def _as_sparse(row) -> dict:
    if isinstance(row, Mapping):
        return dict(row)
    return {t: v for t, v in enumerate(row) if v}


def row_space_contains(basis_rows: Iterable, candidate_rows: Iterable) -> bool:
    eb = EchelonBasis()
    for row in basis_rows:
        eb.add(_as_sparse(row))
    return all(eb.contains(_as_sparse(r)) for r in candidate_rows)


def solve_inverse(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], Fraction]:
    """Inverse and determinant of a square rational matrix by Gauss-Jordan.

    Raises ZeroDivisionError if the matrix is singular.
    """
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(n)] for r, row in enumerate(matrix)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        inv = 1 / pv
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a], det


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    try:
        return solve_inverse(matrix)[1]
    except ZeroDivisionError:
        return Fraction(0)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]
