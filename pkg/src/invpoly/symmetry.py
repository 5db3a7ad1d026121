"""Symmetry groups and one-parameter-subgroup data.

The maximal symmetry group of a polynomial with exponent matrix A is
the kernel of the character map built from A together with the total
(-1)-row; its structure falls out of the Smith normal form of that
augmented matrix.  For a cleave (an n-by-(n+1) augmented polynomial)
the signed maximal minors d_i span the kernel of A, and their
normalized form c picks the distinguished one-parameter subgroup; the
number of exceptional blocks produced by wall-crossing is |sum d_i|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ExponentMatrix
from .errors import (
    BadShapeError,
    ClosedFormMismatchError,
    DefectError,
    SignConventionViolatedError,
    ZeroVectorError,
)
from .intlin import (
    cokernel_structure,
    mat_vec,
    maximal_minor_vector,
    primitive_kernel,
)


@dataclass(frozen=True)
class GroupStructure:
    """Torus rank and finite cyclic factors of a symmetry group."""

    free_rank: int
    torsion_orders: tuple[int, ...]

    @property
    def torsion_order_total(self) -> int:
        return math.prod(self.torsion_orders)

    def to_dict(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion_orders": list(self.torsion_orders),
            "torsion_order_total": self.torsion_order_total,
        }


def gamma_structure(matrix: ExponentMatrix) -> GroupStructure:
    """Structure of the maximal symmetry group.

    Appends a row of -1s to the exponent matrix (the weight-zero
    condition on group elements) and reads the cokernel off the Smith
    normal form; the group is Hom(coker, C*), so free rank and torsion
    carry over unchanged.
    """
    augmented = [list(row) for row in matrix.monomials]
    augmented.append([-1] * matrix.n)
    coker = cokernel_structure(augmented)
    return GroupStructure(
        free_rank=coker.free_rank,
        torsion_orders=coker.torsion_orders,
    )


@dataclass(frozen=True)
class VgitData:
    """Signed minors d, primitive kernel vector c, and their sums."""

    d: tuple[int, ...]
    c: tuple[int, ...]
    gcd: int
    sum_d: int
    sum_c: int

    def to_dict(self) -> dict:
        return {
            "d": list(self.d),
            "c": list(self.c),
            "gcd": self.gcd,
            "sum_d": self.sum_d,
            "t": abs(self.sum_d),
        }


def loop_closed_d(a: tuple[int, ...], b: int) -> tuple[int, ...]:
    """Closed-form minors for an augmented loop: d_j alternates through
    b times the partial products, and d_{n+1} = prod(a) + (-1)^(n+1)."""
    n = len(a)
    d = [
        (-1) ** (j + n + 1) * b * math.prod(a[: j - 1]) for j in range(1, n + 1)
    ]
    d.append(math.prod(a) + (-1) ** (n + 1))
    return tuple(d)


def chain_closed_d(a: tuple[int, ...], b: int) -> tuple[int, ...]:
    """Closed-form minors for an augmented chain: same alternating rule,
    but d_{n+1} = prod(a) with no correction term."""
    n = len(a)
    d = [
        (-1) ** (n + j + 1) * b * math.prod(a[: j - 1]) for j in range(1, n + 1)
    ]
    d.append(math.prod(a))
    return tuple(d)


def _augmented_pattern(
    matrix: ExponentMatrix,
) -> tuple[str, tuple[int, ...], int] | None:
    """Recognize a standard-order augmented loop or chain.

    Rows i < n-1 must be x_i^{a_i} x_{i+1}; the last row carries the
    auxiliary variable x_{n+1}^b and either wraps to x_1 (loop) or not
    (chain).  Returns (kind, a, b) or None for anything else.
    """
    n = matrix.k
    rows = matrix.monomials
    a = []
    for i in range(n - 1):
        expected_support = {i: rows[i][i], i + 1: 1}
        support = {j: e for j, e in enumerate(rows[i]) if e != 0}
        if support != expected_support or rows[i][i] < 2:
            return None
        a.append(rows[i][i])
    last = rows[n - 1]
    head, b = last[n - 1], last[n]
    if head < 2 or b < 1:
        return None
    a.append(head)
    support = {j: e for j, e in enumerate(last) if e != 0}
    if support == {n - 1: head, n: b}:
        return "chain", tuple(a), b
    if n >= 2 and support == {0: 1, n - 1: head, n: b}:
        return "loop", tuple(a), b
    return None


def vgit_lambda(matrix: ExponentMatrix) -> VgitData:
    """Minor vector and one-parameter-subgroup direction for a cleave.

    Needs n monomials in n+1 variables, full rank.  The d_i are the
    signed maximal minors; c = d/gcd must satisfy c_{n+1} > 0 and
    c_n < 0, and a recognized loop/chain augmentation is additionally
    checked against the closed-form minors.
    """
    d = maximal_minor_vector(matrix.monomials)
    try:
        c = primitive_kernel(d)
    except ZeroVectorError:
        raise BadShapeError("augmented matrix is rank-deficient") from None
    g = math.gcd(*(abs(x) for x in d))
    if tuple(x * g for x in c) != d:
        raise SignConventionViolatedError(
            "gcd normalization flips the minor vector; not a cleave matrix"
        )
    if c[-1] <= 0 or c[-2] >= 0:
        raise SignConventionViolatedError(
            f"expected c_n < 0 < c_(n+1), got c = {c}"
        )
    pattern = _augmented_pattern(matrix)
    if pattern is not None:
        kind, a, b = pattern
        closed = loop_closed_d(a, b) if kind == "loop" else chain_closed_d(a, b)
        if closed != d:
            raise ClosedFormMismatchError(
                f"{kind} closed form {closed} != minors {d}"
            )
    if any(mat_vec(matrix.monomials, c)):
        raise DefectError("c is not in the kernel of the exponent matrix")
    return VgitData(d=d, c=c, gcd=g, sum_d=sum(d), sum_c=sum(c))


@dataclass(frozen=True)
class BlockCount:
    """|sum d| together with its two factors."""

    count: int
    kernel_order: int
    character_sum: int

    def to_dict(self) -> dict:
        return {
            "t": self.count,
            "kernel_order": self.kernel_order,
            "character_sum": self.character_sum,
        }


def exceptional_block_count(v: VgitData) -> BlockCount:
    """Number of exceptional blocks of a cleave: t = gcd(d) * |sum c|."""
    count = abs(v.sum_d)
    factored = v.gcd * abs(v.sum_c)
    if count != factored:
        raise DefectError(f"|sum d| = {count} but gcd*|sum c| = {factored}")
    return BlockCount(
        count=count,
        kernel_order=v.gcd,
        character_sum=abs(v.sum_c),
    )
