"""Exact sparse linear algebra used by the jet computations.

Rows are ``{column: value}`` dicts.  :class:`SparseEchelon` keeps integer
rows and eliminates fraction-free, dividing each row by its content after
every step; the pivot of a row is its smallest column, so callers control
the pivoting order through the column numbering.
"""

from __future__ import annotations

from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence

from gmpy2 import mpq, mpz
import gmpy2


def integer_row(row: Mapping[int, object]) -> dict[int, int]:
    """Clear denominators of a rational row, keeping it primitive."""
    den = mpz(1)
    for v in row.values():
        den = gmpy2.lcm(den, mpq(v).denominator)
    out = {c: int(mpq(v) * den) for c, v in row.items() if v}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    if row and row[min(row)] < 0:
        row = {c: -v for c, v in row.items()}
    return row


class SparseEchelon:
    """Incremental row echelon form over the integers."""

    def __init__(self):
        self._rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def copy(self) -> "SparseEchelon":
        other = SparseEchelon()
        other._rows = dict(self._rows)
        return other

    def reduce(self, row: Mapping[int, int]) -> dict[int, int]:
        """Eliminate pivot columns from the front of ``row``.

        The result is empty exactly when ``row`` lies in the row space;
        otherwise its smallest column is not a pivot column.
        """
        v = {c: x for c, x in row.items() if x}
        rows = self._rows
        while v:
            c = min(v)
            piv = rows.get(c)
            if piv is None:
                return v
            a, p = v[c], piv[c]
            g = gcd(a, p)
            ma, mr = p // g, a // g
            if ma != 1:
                v = {k: x * ma for k, x in v.items()}
            for k, x in piv.items():
                nv = v.get(k, 0) - mr * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            v = _primitive(v)
        return v

    def contains(self, row: Mapping[int, int]) -> bool:
        return not self.reduce(row)

    def insert(self, row: Mapping[int, int]) -> bool:
        """Add ``row``; returns True when the rank went up."""
        v = self.reduce(row)
        if not v:
            return False
        self._rows[min(v)] = v
        return True

    def pivots_below(self, column_bound: int) -> int:
        """Number of pivots in columns ``< column_bound``."""
        return sum(1 for c in self._rows if c < column_bound)


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    ech = SparseEchelon()
    for r in rows:
        ech.insert(integer_row(r))
    return ech.rank


def solve_rational(equations: Sequence[Mapping[Hashable, object]], rhs: Sequence[object]):
    """Particular solution of a sparse rational system, or None if inconsistent.

    ``equations[i]`` maps unknowns to coefficients; free unknowns are set to
    zero.  Gauss-Jordan with unknowns pivoted in first-seen order.
    """
    order: dict[Hashable, int] = {}
    for eq in equations:
        for u in eq:
            order.setdefault(u, len(order))
    pivots: dict[int, tuple[dict[int, mpq], mpq]] = {}
    for eq, b in zip(equations, rhs):
        v = {order[u]: mpq(c) for u, c in eq.items() if c}
        b = mpq(b)
        while v:
            c = min(v)
            if c not in pivots:
                break
            prow, pb = pivots[c]
            f = v[c]
            for k, x in prow.items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            b -= f * pb
        if not v:
            if b:
                return None
            continue
        c = min(v)
        f = v[c]
        pivots[c] = ({k: x / f for k, x in v.items()}, b / f)
    solution = {}
    for c in sorted(pivots, reverse=True):
        prow, pb = pivots[c]
        val = pb - sum((x * solution.get(k, 0) for k, x in prow.items() if k != c), mpq(0))
        solution[c] = val
    names = {i: u for u, i in order.items()}
    return {names[i]: solution.get(i, mpq(0)) for i in range(len(order))}
