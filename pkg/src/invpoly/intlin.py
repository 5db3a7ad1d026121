"""Exact integer and rational linear algebra on small dense matrices.

Matrices are plain sequences of sequences of Python ints (arbitrary
precision); no floating point is used anywhere.  Row index i, column
index j, and a matrix acts on column vectors, i.e. an m-by-n matrix is
a map Z^n -> Z^m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadShapeError,
    DefectError,
    NonSquareError,
    SingularMatrixError,
    ZeroVectorError,
)

IntMatrix = Sequence[Sequence[int]]


def _copy(matrix: IntMatrix) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in matrix]
    if rows and any(len(row) != len(rows[0]) for row in rows):
        raise BadShapeError("ragged matrix")
    return rows


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> list[list[int]]:
    """Exact integer matrix product."""
    if a and b and len(a[0]) != len(b):
        raise BadShapeError("inner dimensions differ")
    cols = len(b[0]) if b else 0
    return [
        [sum(ra[k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for ra in a
    ]


def mat_vec(a: IntMatrix, v: Sequence[int]) -> list[int]:
    """Exact integer matrix-vector product."""
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def det_exact(matrix: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = _copy(matrix)
    n = len(m)
    if n == 0:
        return 1
    if len(m[0]) != n:
        raise NonSquareError(f"determinant of a {n}x{len(m[0])} matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                num = row_i[j] * pivot - mik * row_k[j]
                q, r = divmod(num, prev)
                if r:
                    raise DefectError("fraction-free elimination lost exactness")
                row_i[j] = q
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def rank_exact(matrix: IntMatrix) -> int:
    """Rank over the rationals, computed fraction-free over the integers."""
    m = _copy(matrix)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        # smallest-|value| pivot keeps intermediate entries modest
        best = -1
        for i in range(rank, nrows):
            if m[i][col] != 0 and (best < 0 or abs(m[i][col]) < abs(m[best][col])):
                best = i
        if best < 0:
            continue
        m[rank], m[best] = m[best], m[rank]
        pivot = m[rank][col]
        row_r = m[rank]
        for i in range(rank + 1, nrows):
            row_i = m[i]
            factor = row_i[col]
            for j in range(col, ncols):
                num = row_i[j] * pivot - factor * row_r[j]
                q, r = divmod(num, prev)
                if r:
                    raise DefectError("fraction-free elimination lost exactness")
                row_i[j] = q
        prev = pivot
        rank += 1
        if rank == nrows:
            break
    return rank


def maximal_minor_vector(matrix: IntMatrix) -> tuple[int, ...]:
    """Signed maximal minors of an n-by-(n+1) matrix.

    Entry i (1-based) is (-1)^(i+n+1) times the determinant of the matrix
    with column i deleted; the result is an exact kernel vector.
    """
    m = _copy(matrix)
    n = len(m)
    if n == 0 or len(m[0]) != n + 1:
        shape = f"{n}x{len(m[0]) if m else 0}"
        raise BadShapeError(f"need one more column than rows, got {shape}")
    d = []
    for i in range(n + 1):
        minor = [row[:i] + row[i + 1 :] for row in m]
        d.append((-1) ** (i + n) * det_exact(minor))  # (i+1)+(n+1) mod 2
    if any(mat_vec(m, d)):
        raise DefectError("minor vector is not in the kernel")
    return tuple(d)


def primitive_kernel(d: Sequence[int]) -> tuple[int, ...]:
    """Divide by the gcd and normalize the sign.

    The sign is fixed so the last entry is positive; if the last entry is
    zero, the last nonzero entry is used instead.
    """
    vec = [int(x) for x in d]
    g = math.gcd(*(abs(x) for x in vec)) if vec else 0
    if g == 0:
        raise ZeroVectorError("kernel direction of the zero vector")
    c = [x // g for x in vec]
    for x in reversed(c):
        if x != 0:
            if x < 0:
                c = [-y for y in c]
            break
    return tuple(c)


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form: left * input * right is diagonal.

    ``diag`` lists the elementary divisors, non-negative and each dividing
    the next; ``left`` and ``right`` are unimodular.
    """

    diag: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def smith_normal_form(matrix: IntMatrix) -> SnfResult:
    """Smith normal form with both unimodular transforms.

    Pivots are chosen as the smallest-absolute-value nonzero entry of the
    remaining block, scanned row-major, so the transforms are reproducible.
    The factorization is re-multiplied before returning.
    """
    m = _copy(matrix)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    left = _identity(nrows)
    right = _identity(ncols)

    def row_op(i: int, k: int, q: int) -> None:
        for j in range(ncols):
            m[i][j] -= q * m[k][j]
        for j in range(nrows):
            left[i][j] -= q * left[k][j]

    def col_op(j: int, k: int, q: int) -> None:
        for i in range(nrows):
            m[i][j] -= q * m[i][k]
        for i in range(ncols):
            right[i][j] -= q * right[i][k]

    def swap_rows(i: int, k: int) -> None:
        m[i], m[k] = m[k], m[i]
        left[i], left[k] = left[k], left[i]

    def swap_cols(j: int, k: int) -> None:
        for row in m:
            row[j], row[k] = row[k], row[j]
        for row in right:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(nrows, ncols):
        pi = pj = -1
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] != 0 and (pi < 0 or abs(m[i][j]) < abs(m[pi][pj])):
                    pi, pj = i, j
        if pi < 0:
            break
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)

        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t] != 0:
                        swap_rows(i, t)  # strictly smaller pivot
                        dirty = True
            for j in range(t + 1, ncols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j] != 0:
                        swap_cols(j, t)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block for the divisor chain
            witness = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if m[i][j] % m[t][t] != 0:
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            row_op(t, witness, -1)  # drag the bad row into play

        if m[t][t] < 0:
            for j in range(ncols):
                m[t][j] = -m[t][j]
            for j in range(nrows):
                left[t][j] = -left[t][j]
        t += 1

    diag = tuple(m[k][k] for k in range(min(nrows, ncols)))
    result = SnfResult(
        diag=diag,
        left=tuple(tuple(row) for row in left),
        right=tuple(tuple(row) for row in right),
    )
    _verify_snf(matrix, result)
    return result


def _verify_snf(matrix: IntMatrix, result: SnfResult) -> None:
    product = mat_mul(mat_mul(result.left, matrix), result.right)
    nrows = len(product)
    ncols = len(product[0]) if product else 0
    for i in range(nrows):
        for j in range(ncols):
            expected = result.diag[i] if i == j and i < len(result.diag) else 0
            if product[i][j] != expected:
                raise DefectError("SNF re-multiplication failed")
    for a, b in zip(result.diag, result.diag[1:]):
        if a == 0 and b != 0:
            raise DefectError("SNF divisor chain out of order")
        if a != 0 and b % a != 0:
            raise DefectError("SNF divisor chain broken")
    if abs(det_exact(result.left)) != 1 or abs(det_exact(result.right)) != 1:
        raise DefectError("SNF transform is not unimodular")


@dataclass(frozen=True)
class CokernelStructure:
    """Structure of Z^m / image for an m-by-n integer matrix."""

    free_rank: int
    torsion_orders: tuple[int, ...]

    @property
    def torsion_order_total(self) -> int:
        return math.prod(self.torsion_orders)


def cokernel_structure(matrix: IntMatrix) -> CokernelStructure:
    """Free rank and cyclic torsion factors of the cokernel."""
    snf = smith_normal_form(matrix)
    nrows = len(matrix)
    rank = sum(1 for s in snf.diag if s != 0)
    return CokernelStructure(
        free_rank=nrows - rank,
        torsion_orders=tuple(s for s in snf.diag if s > 1),
    )


def inverse_rational(matrix: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact rational inverse via Gauss-Jordan elimination."""
    m = _copy(matrix)
    n = len(m)
    if n == 0 or len(m[0]) != n:
        raise NonSquareError("inverse of a non-square matrix")
    work = [[Fraction(x) for x in row] for row in m]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next(
            (i for i in range(col, n) if work[i][col] != 0),
            None,
        )
        if pivot_row is None:
            raise SingularMatrixError("matrix has no rational inverse")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        pivot = work[col][col]
        work[col] = [x / pivot for x in work[col]]
        inv[col] = [x / pivot for x in inv[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[col])]
                inv[i] = [a - factor * b for a, b in zip(inv[i], inv[col])]
    for i in range(n):
        for j in range(n):
            check = sum(Fraction(m[i][k]) * inv[k][j] for k in range(n))
            if check != (1 if i == j else 0):
                raise DefectError("inverse verification failed")
    return tuple(tuple(row) for row in inv)
