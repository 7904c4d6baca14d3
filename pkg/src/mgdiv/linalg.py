"""Gaussian elimination over Fractions; right-hand sides may be affine Coefficients."""

from __future__ import annotations

from fractions import Fraction

from .classes import Coefficient


class Inconsistent(ValueError):
    def __init__(self, row: int):
        super().__init__(f"system is inconsistent at row {row}")
        self.row = row


def rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        for k in range(r + 1, len(m)):
            f = m[k][c] * inv
            if f:
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        r += 1
    return r


def solve(A, b) -> list:
    """One solution of A x = b (free variables set to 0).

    ``A`` holds numbers, ``b`` holds numbers or Coefficients.  Raises
    :class:`Inconsistent` when no solution exists.
    """
    m = [[Fraction(x) for x in row] for row in A]
    rhs = [Coefficient.of(v) for v in b]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, nrows) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        rhs[r] = rhs[r] * inv
        for k in range(nrows):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [a - f * p for a, p in zip(m[k], m[r])]
                rhs[k] = rhs[k] - rhs[r] * f
        pivots.append(c)
        r += 1
    for k in range(r, nrows):
        if rhs[k]:
            raise Inconsistent(k)
    x = [Coefficient.of(0)] * ncols
    for k, c in enumerate(pivots):
        x[c] = rhs[k]
    return x
