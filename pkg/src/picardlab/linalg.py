"""Gaussian elimination over the constant tower (an exact field).

Matrix entries are constants-only MPoly values; division goes through
tower_invert, so ranks and solutions are exact.
"""

from __future__ import annotations

from fractions import Fraction

from .symbolic import MPoly, RationalFunction, tower_invert


def _echelon(rows: list[list[MPoly]]):
    """In-place forward elimination; returns list of (row_idx, col) pivots."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, len(rows)):
            if not rows[k][c].is_zero():
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = tower_invert(rows[r][c])
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and not rows[k][c].is_zero():
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    return pivots


def matrix_rank(matrix: list[list[MPoly]]) -> int:
    rows = [list(row) for row in matrix]
    return len(_echelon(rows))


def solve_linear(matrix: list[list[MPoly]], rhs: list[MPoly]):
    """One exact solution of A x = b, or None if inconsistent.

    Free coordinates are set to zero.
    """
    if not matrix:
        return []
    tower = rhs[0].tower if rhs else matrix[0][0].tower
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0])
    pivots = _echelon(rows)
    solution = [tower.zero()] * ncols
    for r, c in pivots:
        if c == ncols:
            return None  # pivot in the augmented column: inconsistent
        solution[c] = rows[r][ncols]
    # rows beyond the pivots are all-zero by construction
    return solution


def solve_linear_field(matrix: list[list[MPoly]], rhs: list[MPoly]):
    """Like solve_linear, but entries may contain free parameter variables.

    Elimination runs in the fraction field, so pivots need not be
    constants-only.  Returns RationalFunction coordinates, or None.
    """
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows = [
        [RationalFunction(e) for e in row] + [RationalFunction(b)]
        for row, b in zip(matrix, rhs)
    ]
    tower = rhs[0].tower if rhs else matrix[0][0].tower
    pivots = []
    r = 0
    for c in range(ncols + 1):
        pivot = None
        for k in range(r, len(rows)):
            if not rows[k][c].num.is_zero():
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and not rows[k][c].num.is_zero():
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    solution = [RationalFunction(tower.zero())] * ncols
    for r, c in pivots:
        if c == ncols:
            return None
        solution[c] = rows[r][ncols]
    return solution


def quadratic_form_rank(poly: MPoly, variables) -> int:
    """Rank of the symmetric matrix of a quadratic form in the variables."""
    tower = poly.tower
    index = {v: k for k, v in enumerate(variables)}
    n = len(index)
    gram = [[tower.zero() for _ in range(n)] for _ in range(n)]
    for mono, coeff in poly.terms.items():
        geo = [(v, e) for v, e in mono if v in index]
        rest = tuple((v, e) for v, e in mono if v not in index)
        assert sum(e for _, e in geo) == 2, "not a quadratic form"
        const = MPoly._make(tower, {rest: coeff})
        if len(geo) == 1:
            i = index[geo[0][0]]
            gram[i][i] = gram[i][i] + const
        else:
            i, j = index[geo[0][0]], index[geo[1][0]]
            half = const * Fraction(1, 2)
            gram[i][j] = gram[i][j] + half
            gram[j][i] = gram[j][i] + half
    return matrix_rank(gram)


def in_span(vectors: list[list[MPoly]], target: list[MPoly]) -> bool:
    base = [list(v) for v in vectors]
    return matrix_rank(base) == matrix_rank(base + [list(target)])


def matrix_mul(A: list[list[MPoly]], B: list[list[MPoly]]):
    n, k, m = len(A), len(B), len(B[0])
    tower = A[0][0].tower
    out = [[tower.zero()] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if a.is_zero():
                continue
            Bt = B[t]
            for j in range(m):
                b = Bt[j]
                if not b.is_zero():
                    row[j] = row[j] + a * b
    return out


def matrix_trace(A: list[list[MPoly]]) -> MPoly:
    t = A[0][0]
    for k in range(1, len(A)):
        t = t + A[k][k]
    return t


def identity_matrix(tower, n: int):
    return [
        [tower.one() if i == j else tower.zero() for j in range(n)]
        for i in range(n)
    ]
