"""Exact Gaussian elimination over any field of exact scalars.

Matrices are lists of rows.  Nothing here uses floating point, so ranks and
kernels are exact.  ``sparse_nullspace`` handles the large but very sparse
operator matrices that arise from truncated monomial windows.
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from fractions import Fraction
from typing import Callable

from .scalars import DualNumber

__all__ = ["det", "jacobian", "nullspace", "rank", "rref", "solve", "sparse_nullspace"]


def rref(matrix: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [list(row) for row in matrix]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], n_cols: int | None = None) -> list[list]:
    """Basis of ``{x : M x = 0}``, one vector per free column."""
    if not matrix:
        if n_cols is None:
            raise ValueError("n_cols is required for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    reduced, pivots = rref(matrix)
    width = len(matrix[0])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> tuple[list, list[list]] | None:
    """Solve ``M x = b``.

    Returns ``(particular, nullspace_basis)`` or ``None`` when inconsistent.
    """
    width = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(aug)
    if width in pivots:
        return None
    x = [Fraction(0)] * width
    for row, pc in zip(reduced, pivots):
        x[pc] = row[width]
    return x, nullspace(matrix, width) if matrix else []


def det(matrix: Sequence[Sequence]):
    """Determinant by elimination (works for any exact field)."""
    m = [list(row) for row in matrix]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out = out * m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def sparse_nullspace(
    columns: Sequence[Mapping[Hashable, object]],
) -> list[dict[int, object]]:
    """Kernel of a sparse linear map.

    ``columns[j]`` maps output coordinates to the nonzero entries of the
    image of the ``j``-th input basis vector.  Returns kernel vectors as
    sparse ``{column index: coefficient}`` dicts.

    Elimination is done on the columns: each column is reduced against the
    pivots found so far while a record of which input combination produced
    it is carried along; a column reducing to zero yields a kernel vector.
    """
    pivots: dict[Hashable, tuple[dict, dict]] = {}
    order: dict[Hashable, int] = {}
    kernel: list[dict[int, object]] = []
    for j, col in enumerate(columns):
        vec = {k: v for k, v in col.items() if v != 0}
        combo: dict[int, object] = {j: Fraction(1)}
        while vec:
            # oldest pivot first, so earlier pivot keys are never reintroduced
            hits = [k for k in vec if k in pivots]
            if not hits:
                key = next(iter(vec))
                order[key] = len(order)
                pivots[key] = (vec, combo)
                break
            hit = min(hits, key=order.__getitem__)
            pvec, pcombo = pivots[hit]
            f = vec[hit] / pvec[hit]
            for k, v in pvec.items():
                nv = vec.get(k, 0) - f * v
                if nv == 0:
                    vec.pop(k, None)
                else:
                    vec[k] = nv
            for k, v in pcombo.items():
                nv = combo.get(k, 0) - f * v
                if nv == 0:
                    combo.pop(k, None)
                else:
                    combo[k] = nv
        else:
            kernel.append(combo)
    return kernel


def jacobian(fn: Callable[[list], Sequence], point: Sequence) -> list[list]:
    """Exact Jacobian of a polynomial/rational map by forward-mode dual numbers.

    ``fn`` takes a list of scalars and returns a sequence of scalars; it is
    evaluated once per input direction with that input seeded as ``x + δ``.
    """
    cols = []
    for j in range(len(point)):
        seeded = [DualNumber(x, 1 if i == j else 0) for i, x in enumerate(point)]
        out = fn(seeded)
        cols.append([y.b if isinstance(y, DualNumber) else Fraction(0) for y in out])
    return [list(row) for row in zip(*cols)]
