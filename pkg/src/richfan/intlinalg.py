"""Exact integer / rational linear algebra helpers.

Vectors are plain tuples of ints, matrices are lists of row tuples.  Nothing
here ever touches floats; ranks use Fractions and determinants use the Bareiss
scheme so intermediate values stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vec:
    """Scale a nonzero integer vector down to its primitive representative."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


def vadd(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c: int, a: Sequence[int]) -> Vec:
    return tuple(c * x for x in a)


def is_zero(a: Sequence[int]) -> bool:
    return all(x == 0 for x in a)


def rank_of(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by fraction-free-ish Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for r in range(row + 1, len(m)):
            if m[r][col] != 0:
                f = m[r][col] / pv
                for c in range(col, ncols):
                    m[r][c] -= f * m[row][c]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[Vec]:
    """Basis of the saturated integer kernel {x : A x = 0}.

    Works by unimodular column operations on A stacked over an identity
    matrix; columns whose A-part becomes zero give kernel vectors.  The result
    spans ker(A) over Q and is closed under division (saturated), so it is a
    lattice basis of ker(A) cap Z^n.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    # work columns: each is (A column, identity column)
    acols = [[rows[r][c] for r in range(nrows)] for c in range(ncols)]
    icols = [[1 if r == c else 0 for r in range(ncols)] for c in range(ncols)]
    top = 0
    for r in range(nrows):
        # clear row r to a single pivot among columns top..ncols-1
        while True:
            nz = [c for c in range(top, ncols) if acols[c][r] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(acols[c][r]))
            c0 = nz[0]
            for c in nz[1:]:
                q = acols[c][r] // acols[c0][r]
                if q:
                    for i in range(nrows):
                        acols[c][i] -= q * acols[c0][i]
                    for i in range(ncols):
                        icols[c][i] -= q * icols[c0][i]
        nz = [c for c in range(top, ncols) if acols[c][r] != 0]
        if nz:
            c0 = nz[0]
            acols[top], acols[c0] = acols[c0], acols[top]
            icols[top], icols[c0] = icols[c0], icols[top]
            top += 1
    kernel = [tuple(icols[c]) for c in range(top, ncols)]
    return [tuple(v) for v in kernel]


def hnf_rows(rows: Sequence[Sequence[int]]) -> list[Vec]:
    """Canonical (row-style Hermite) basis of the lattice spanned by rows.

    Zero rows are dropped; pivots are positive and entries above a pivot are
    reduced to lie in [0, pivot).  Two row sets span the same lattice iff their
    hnf_rows agree.
    """
    m = [list(r) for r in rows if not is_zero(r)]
    if not m:
        return []
    ncols = len(m[0])
    out: list[list[int]] = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        # euclid the column below the pivot to zero
        for r in range(row + 1, len(m)):
            while m[r][col] != 0:
                if abs(m[r][col]) < abs(m[row][col]):
                    m[row], m[r] = m[r], m[row]
                q = m[r][col] // m[row][col]
                for c in range(ncols):
                    m[r][c] -= q * m[row][c]
        if m[row][col] < 0:
            m[row] = [-x for x in m[row]]
        row += 1
        if row == len(m):
            break
    m = m[:row]
    # reduce entries above each pivot
    pivots = []
    for r in range(len(m)):
        c = next(i for i, x in enumerate(m[r]) if x != 0)
        pivots.append(c)
    for r in range(len(m) - 1, -1, -1):
        c = pivots[r]
        for rr in range(r):
            q = m[rr][c] // m[r][c]
            if q:
                for cc in range(ncols):
                    m[rr][cc] -= q * m[r][cc]
    return [tuple(r) for r in m]


def saturated_span(rows: Sequence[Sequence[int]]) -> list[Vec]:
    """HNF basis of the saturation of the row span: span_Q(rows) cap Z^n."""
    live = [r for r in rows if not is_zero(r)]
    if not live:
        return []
    n = len(live[0])
    k = integer_kernel(live)
    if not k:
        # full span; kernel-of-kernel would lose the ambient dimension
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return hnf_rows(integer_kernel(k))


def solve_fraction(
    rows: Sequence[Sequence[int]], rhs: Sequence[int]
) -> list[Fraction] | None:
    """One rational solution of A x = b, or None if inconsistent."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    m = [[Fraction(x) for x in rows[r]] + [Fraction(rhs[r])] for r in range(nrows)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if m[r][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, c in pivots:
        x[c] = m[r][ncols]
    return x
