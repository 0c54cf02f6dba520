"""Exact linear algebra over the rationals.

Small routines backing the dimension-counting oracle and the fixture
generators. All entries are ``fractions.Fraction``; no floating point enters
any rank or nullspace decision.
"""
from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)


def rank_sparse(rows) -> int:
    """Rank of a sparse rational matrix given as ``{column: coefficient}`` rows.

    Plain Gaussian elimination with pivot rows normalised to a leading 1.
    Rows may repeat or be dependent; they simply reduce to nothing.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v != 0}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                lead = row[col]
                pivots[col] = {c: v / lead for c, v in row.items()}
                rank += 1
                break
            factor = row[col]
            for c, v in piv.items():
                acc = row.get(c, _ZERO) - factor * v
                if acc:
                    row[c] = acc
                else:
                    row.pop(c, None)
    return rank


def nullspace_dense(rows, ncols: int) -> list[list[Fraction]]:
    """Nullspace basis of a small dense rational matrix.

    ``rows`` is a list of coefficient lists of length ``ncols``. Returns one
    basis vector per free column, each of length ``ncols``, via reduced row
    echelon form. The basis is exact; callers may convert to float afterwards.
    """
    mat = [[Fraction(x) for x in row] for row in rows]
    if any(len(row) != ncols for row in mat):
        raise ValueError("rows must all have length ncols")
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(mat):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivot_cols):
        vec = [_ZERO] * ncols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            vec[pc] = -mat[i][free]
        basis.append(vec)
    return basis
