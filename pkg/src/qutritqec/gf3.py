"""Small linear-algebra kit over the field of integers mod 3.

Used for symplectic bookkeeping: stabilizer exponent vectors live in Z3^(2n)
and questions like "is this operator a stabilizer product" reduce to row-space
membership here.
"""

from __future__ import annotations

import numpy as np

#: Multiplicative inverses mod 3 (index 0 unused).
_INV = (0, 1, 2)


def rref(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod 3. Returns (R, pivot_columns)."""
    work = np.mod(np.asarray(matrix, dtype=np.int64), 3).copy()
    rows, cols = work.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot_row = None
        for rr in range(r, rows):
            if work[rr, c] % 3 != 0:
                pivot_row = rr
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            work[[pivot_row, r]] = work[[r, pivot_row]]
        work[r] = (work[r] * _INV[work[r, c]]) % 3
        for rr in range(rows):
            if rr != r and work[rr, c] % 3 != 0:
                work[rr] = (work[rr] - work[rr, c] * work[r]) % 3
        pivots.append(c)
        r += 1
    return work % 3, pivots


def rank(matrix: np.ndarray) -> int:
    return len(rref(matrix)[1])


def null_space(matrix: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the right null space of ``matrix`` mod 3."""
    mat = np.mod(np.asarray(matrix, dtype=np.int64), 3)
    _, cols = mat.shape
    red, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = np.zeros(cols, dtype=np.int64)
        vec[fc] = 1
        for row_idx, pc in enumerate(pivots):
            vec[pc] = (-red[row_idx, fc]) % 3
        basis.append(vec)
    if not basis:
        return np.zeros((0, cols), dtype=np.int64)
    return np.array(basis, dtype=np.int64)


def in_row_space(matrix: np.ndarray, vector: np.ndarray) -> bool:
    """True iff ``vector`` is a mod-3 linear combination of the rows."""
    mat = np.mod(np.asarray(matrix, dtype=np.int64), 3)
    vec = np.mod(np.asarray(vector, dtype=np.int64), 3)
    stacked = np.vstack([mat, vec])
    return rank(stacked) == rank(mat)


def row_space_vectors(matrix: np.ndarray) -> np.ndarray:
    """All 3**r distinct row-space elements, one per row of the result."""
    red, pivots = rref(matrix)
    basis = red[: len(pivots)]
    r = len(pivots)
    cols = basis.shape[1] if r else np.asarray(matrix).shape[1]
    coeffs = np.indices((3,) * r).reshape(r, -1).T if r else np.zeros((1, 0), int)
    return np.mod(coeffs @ basis, 3) if r else np.zeros((1, cols), dtype=np.int64)


def encode_vectors(vectors: np.ndarray) -> np.ndarray:
    """Pack mod-3 row vectors into ternary integers (for fast membership)."""
    vecs = np.mod(np.asarray(vectors, dtype=np.int64), 3)
    weights = 3 ** np.arange(vecs.shape[-1] - 1, -1, -1, dtype=np.int64)
    return vecs @ weights
