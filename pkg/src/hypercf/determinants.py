"""Exact determinants: fraction-free Bareiss elimination and Dodgson condensation.

Hankel matrices of moment sequences blow up fast; Bareiss keeps every
intermediate an integer that divides exactly, so nothing is lost to
fraction normalization.  Rational input is cleared row by row first.
Dodgson condensation is kept as an independent oracle: it computes the
same determinant by a completely different contraction and is used to
spot-check the elimination wherever its interior entries stay nonzero.
"""

from __future__ import annotations

from gmpy2 import mpz

from .errors import HypercfError
from .exactnum import Rational, rat


class DodgsonDegenerate(HypercfError):
    """Condensation hit a zero interior entry; the oracle does not apply."""


def _clear_rows(rows):
    """Integer matrix plus the product of the row scalings."""
    from gmpy2 import lcm

    cleared = []
    scale = mpz(1)
    for row in rows:
        qs = [rat(x) for x in row]
        m = mpz(1)
        for q in qs:
            m = lcm(m, q.denominator)
        scale *= m
        cleared.append([mpz(q.numerator * (m // q.denominator)) for q in qs])
    return cleared, scale


def det_bareiss(rows) -> Rational:
    """Exact determinant of a square rational matrix."""
    n = len(rows)
    if n == 0:
        return rat(1)
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    m, scale = _clear_rows(rows)
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return rat(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = mpz(0)
        prev = pivot
    return rat(sign * m[n - 1][n - 1], scale)


def det_dodgson(rows) -> Rational:
    """Determinant by Dodgson condensation (independent of elimination).

    Raises DodgsonDegenerate when an interior entry vanishes, in which case
    the method simply does not apply (no conclusion about the matrix).
    """
    n = len(rows)
    if n == 0:
        return rat(1)
    cur = [[rat(x) for x in row] for row in rows]
    if n == 1:
        return cur[0][0]
    inner = None
    while len(cur) > 1:
        k = len(cur)
        nxt = [
            [cur[i][j] * cur[i + 1][j + 1] - cur[i][j + 1] * cur[i + 1][j] for j in range(k - 1)]
            for i in range(k - 1)
        ]
        if inner is not None:
            for i in range(k - 1):
                for j in range(k - 1):
                    if inner[i + 1][j + 1] == 0:
                        raise DodgsonDegenerate("zero interior entry during condensation")
                    nxt[i][j] = nxt[i][j] / inner[i + 1][j + 1]
        inner = cur
        cur = nxt
    return cur[0][0]


def hankel_minor(s, row_offsets, col_offsets) -> Rational:
    """det( s[r_i + c_j] ) for explicit row/column offset tuples."""
    need = max(row_offsets) + max(col_offsets) if row_offsets else -1
    if need >= len(s):
        raise ValueError(f"need moments through s_{need}, have {len(s) - 1}")
    rows = [[s[r + c] for c in col_offsets] for r in row_offsets]
    return det_bareiss(rows)
