"""
Exact linear algebra over cyclotomic field elements.

Matrices are lists of rows; entries are anything ``as_field_elem`` accepts.
Only what the oracles need is provided: row reduction, rank, kernels and
span membership.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from src.fields.cyclotomic import FieldElem, Scalar, as_field_elem

Matrix = List[List[FieldElem]]

_ZERO = as_field_elem(0)
_ONE = as_field_elem(1)


def to_matrix(rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> Matrix:
    width = ncols if ncols is not None else max((len(r) for r in rows), default=0)
    out: Matrix = []
    for row in rows:
        if len(row) > width:
            raise ValueError(f"row of length {len(row)} exceeds {width} columns")
        out.append([as_field_elem(v) for v in row] + [_ZERO] * (width - len(row)))
    return out


def row_reduce(rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = to_matrix(rows, ncols)
    width = len(m[0]) if m else (ncols or 0)
    pivots: List[int] = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> int:
    return len(row_reduce(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> Matrix:
    """Basis of {v : M v = 0} for an ``len(rows) x ncols`` matrix."""
    if not rows:
        return [[_ONE if i == j else _ZERO for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis: Matrix = []
    for f in free:
        vec = [_ZERO] * ncols
        vec[f] = _ONE
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def in_span(vectors: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> bool:
    """True when ``target`` is a linear combination of ``vectors``."""
    if not any(as_field_elem(v) for v in target):
        return True
    width = max([len(target)] + [len(v) for v in vectors])
    return rank(list(vectors) + [target], width) == rank(vectors, width) if vectors else False
