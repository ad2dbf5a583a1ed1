"""Exact Gaussian elimination over QQ(i)."""

from __future__ import annotations

from typing import Sequence

from .poly import GaussianRational

Matrix = list[list[GaussianRational]]

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[GaussianRational.coerce(v) for v in r] for r in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    M = as_matrix(rows)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[list[GaussianRational]]:
    """Basis of the right kernel, one vector per free column (free entry 1, others 0)."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def column_space_basis(rows: Sequence[Sequence], ncols: int) -> list[list[GaussianRational]]:
    """The pivot columns of the matrix itself."""
    M = as_matrix(rows)
    _, pivots = rref(M, ncols)
    return [[M[i][c] for i in range(len(M))] for c in pivots]


def span_basis(vectors: Sequence[Sequence], dim: int) -> list[list[GaussianRational]]:
    """Reduced echelon basis of the span of ``vectors`` in F^dim."""
    R, _ = rref(vectors, dim) if vectors else ([], [])
    return R


def in_span(v: Sequence, basis_rref: Sequence[Sequence], dim: int) -> bool:
    """Membership of v in the span of an echelon basis."""
    if not basis_rref:
        return not any(GaussianRational.coerce(x) for x in v)
    return rank(list(basis_rref) + [list(v)], dim) == rank(basis_rref, dim)


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> list[GaussianRational]:
    out = []
    for r in rows:
        acc = _ZERO
        for a, b in zip(r, v):
            if a and b:
                acc = acc + GaussianRational.coerce(a) * b
        out.append(acc)
    return out
