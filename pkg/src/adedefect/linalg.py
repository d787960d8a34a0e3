"""Exact matrices over Q and the rank kernel.

The compiled ``_kernels`` extension is used when it was built; otherwise (or
when ``ADEDEFECT_PURE_PYTHON`` is set) the pure-Python kernel takes over.
Both implement the same fraction-free elimination.
"""

import os
from fractions import Fraction
from math import lcm

from .errors import AlgebraError
from .fields import to_rational

from . import _kernels_py

if os.environ.get("ADEDEFECT_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
bareiss_rank = (_compiled or _kernels_py).bareiss_rank


class RatMatrix:
    """Dense matrix of ``Fraction`` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = [[to_rational(x) for x in row] for row in entries]
        if cols is None:
            cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != cols:
                raise AlgebraError("ragged matrix", "RatMatrix")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"

    def vstack(self, other):
        if self.cols != other.cols and self.rows and other.rows:
            raise AlgebraError("column count mismatch", "RatMatrix.vstack")
        cols = self.cols if self.rows else other.cols
        return RatMatrix(self.entries + other.entries, cols)

    def integer_rows(self):
        """Each row scaled by the lcm of its denominators."""
        out = []
        for row in self.entries:
            den = lcm(*(x.denominator for x in row)) if row else 1
            out.append([x.numerator * (den // x.denominator) for x in row])
        return out

    def tolist(self):
        return [[str(x) for x in row] for row in self.entries]


def matrix_rank(m):
    """Rank over Q via fraction-free elimination on cleared integer rows."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return bareiss_rank(m.integer_rows())


def gauss_rank(rows):
    """Rank by plain Gaussian elimination over any exact field.

    Works for ``Fraction`` and :class:`~adedefect.fields.FieldElem` entries;
    used for ranks over extension levels and as an independent check of the
    integer kernel.
    """
    m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, len(m)):
            if m[r][c]:
                f = m[r][c] / p
                for j in range(c, ncols):
                    m[r][j] = m[r][j] - f * m[rank][j]
        rank += 1
        if rank == len(m):
            break
    return rank


def solve(a, b):
    """Solve the square system ``a x = b`` over Q; ``None`` if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def determinant(a):
    """Exact determinant of a small integer/rational matrix."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det
