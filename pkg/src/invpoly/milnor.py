"""Milnor numbers, two independent ways.

``milnor_closed`` multiplies the per-atom closed forms: r - 1 for a
Fermat, the product of exponents for a loop's transpose, and an
alternating-sum formula for a chain's transpose.  ``milnor_brute``
never looks at the atom structure: it grades the Jacobian ring by
weighted degree and counts quotient dimensions with exact ranks.  The
two must agree on every classifiable input, which is the main
correctness check of the whole package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .core import CHAIN, FERMAT, LOOP, Atom, Classification, ExponentMatrix, weight_system
from .errors import (
    InvalidClassificationError,
    LimitExceededError,
    NonSquareError,
    NoPositiveWeightsError,
    NotQuasihomogeneousError,
    SingularMatrixError,
)
from .intlin import rank_exact


@dataclass(frozen=True)
class Limits:
    """Resource bounds for the brute-force route.

    ``max_monomials`` caps the total number of basis monomials summed
    over all weighted degrees; ``max_socle`` caps the socle degree.
    Exceeding either raises LimitExceededError, which means "skip",
    never "wrong".
    """

    max_monomials: int = 200_000
    max_socle: int = 5_000


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class MilnorReport:
    """Result of a Milnor-number computation.

    ``graded_dims`` and ``socle_degree`` are only present for the
    brute-force method.
    """

    value: int
    method: str  # "ClosedForm" | "BruteForce"
    graded_dims: Optional[tuple[int, ...]] = None
    socle_degree: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "mu": self.value,
            "method": self.method,
            "graded_dims": list(self.graded_dims)
            if self.graded_dims is not None
            else None,
            "socle": self.socle_degree,
        }


def _chain_transpose_mu(t: tuple[int, ...]) -> int:
    """Milnor number of the transpose of Chain(t_1, ..., t_n).

    Empty products are 1; a length-0 chain contributes 1.
    """
    n = len(t)
    if n == 0:
        return 1
    total = math.prod(t)
    if n % 2 == 0:
        for k in range(1, n // 2 + 1):
            total -= (t[2 * k - 2] - 1) * math.prod(t[: 2 * k - 2])
    else:
        total -= 1
        for k in range(1, (n - 1) // 2 + 1):
            total -= (t[2 * k - 1] - 1) * math.prod(t[: 2 * k - 1])
    return total


def _atom_transpose_mu(atom: Atom) -> int:
    if atom.kind == FERMAT:
        return atom.exponents[0] - 1
    if atom.kind == LOOP:
        return math.prod(atom.exponents)
    return _chain_transpose_mu(atom.exponents)


def milnor_closed(c: Classification, of_transpose: bool = False) -> int:
    """Closed-form Milnor number, multiplied over atoms.

    The per-atom formulas give mu of the TRANSPOSE in terms of the
    atom's own exponents.  With ``of_transpose`` set this is returned
    directly; otherwise the atoms are transposed first (chains and
    loops reverse, Fermats are fixed) so the value refers to the
    polynomial itself.
    """
    if not isinstance(c, Classification) or not c.atoms:
        raise InvalidClassificationError("need a classification with atoms")
    covered = sorted(v for atom in c.atoms for v in atom.variables)
    if covered != list(range(1, c.n + 1)):
        raise InvalidClassificationError("atoms do not partition the variables")
    total = 1
    for atom in c.atoms:
        if of_transpose:
            exponents = atom.exponents
        else:
            # mu(w) = mu((w^T)^T): apply the transpose formulas to w^T
            exponents = tuple(reversed(atom.exponents))
        total *= _atom_transpose_mu(Atom(atom.kind, exponents, atom.variables))
    return total


def milnor_of_transpose(matrix: ExponentMatrix) -> int:
    """mu(w^T) straight from w's exponent matrix."""
    from .core import classify

    return milnor_closed(classify(matrix), of_transpose=True)


def _monomials_of_degree(
    delta: int, weights: tuple[int, ...]
) -> list[tuple[int, ...]]:
    """All exponent tuples e with sum e_j * q_j = delta, in lex order."""
    n = len(weights)
    out: list[tuple[int, ...]] = []
    stack: list[int] = []

    def rec(j: int, remaining: int) -> None:
        if j == n - 1:
            q, r = divmod(remaining, weights[j])
            if r == 0:
                out.append(tuple(stack + [q]))
            return
        q = weights[j]
        for e in range(remaining // q + 1):
            stack.append(e)
            rec(j + 1, remaining - e * q)
            stack.pop()

    if n:
        rec(0, delta)
    elif delta == 0:
        out.append(())
    return out


def milnor_brute(
    matrix: ExponentMatrix, limits: Limits = DEFAULT_LIMITS
) -> MilnorReport:
    """Dimension of the Jacobian ring, graded by weighted degree.

    Each partial derivative of w is quasihomogeneous of degree d - q_i,
    so the quotient splits by degree; the degree-delta dimension is the
    number of degree-delta monomials minus the rank of multiplication
    by the derivatives into that degree.  Pure integer arithmetic
    throughout; the atom structure is never consulted.
    """
    try:
        ws = weight_system(matrix)
    except (NonSquareError, SingularMatrixError, NoPositiveWeightsError) as e:
        raise NotQuasihomogeneousError(str(e)) from None
    q = ws.weights
    d = ws.degree
    n = matrix.n
    socle = n * d - 2 * sum(q)
    if socle > limits.max_socle:
        raise LimitExceededError(
            f"socle degree {socle} exceeds the {limits.max_socle} bound"
        )

    # partial derivative i: list of (coefficient, exponent tuple)
    derivatives: list[list[tuple[int, tuple[int, ...]]]] = []
    for i in range(n):
        terms = []
        for row in matrix.monomials:
            if row[i] > 0:
                shifted = tuple(
                    e - 1 if j == i else e for j, e in enumerate(row)
                )
                terms.append((row[i], shifted))
        derivatives.append(terms)

    basis_cache: dict[int, list[tuple[int, ...]]] = {}
    slots = 0

    def basis(delta: int) -> list[tuple[int, ...]]:
        nonlocal slots
        if delta not in basis_cache:
            mons = _monomials_of_degree(delta, q)
            slots += len(mons)
            if slots > limits.max_monomials:
                raise LimitExceededError(
                    f"more than {limits.max_monomials} monomials needed"
                )
            basis_cache[delta] = mons
        return basis_cache[delta]

    dims = []
    for delta in range(socle + 1):
        columns = basis(delta)
        index = {mon: j for j, mon in enumerate(columns)}
        rows = []
        for i in range(n):
            source = delta - (d - q[i])
            if source < 0:
                continue
            for mon in basis(source):
                row = [0] * len(columns)
                for coeff, term in derivatives[i]:
                    product = tuple(a + b for a, b in zip(mon, term))
                    row[index[product]] += coeff
                rows.append(row)
        rank = rank_exact(rows) if rows else 0
        dims.append(len(columns) - rank)

    return MilnorReport(
        value=sum(dims),
        method="BruteForce",
        graded_dims=tuple(dims),
        socle_degree=socle,
    )


def graded_dimension(
    matrix: ExponentMatrix, delta: int
) -> int:
    """Quotient dimension in one weighted degree (used to probe degrees
    above the socle)."""
    ws = weight_system(matrix)
    q, d, n = ws.weights, ws.degree, matrix.n
    columns = _monomials_of_degree(delta, q)
    index = {mon: j for j, mon in enumerate(columns)}
    rows = []
    for i in range(n):
        source = delta - (d - q[i])
        if source < 0:
            continue
        for mon in _monomials_of_degree(source, q):
            row = [0] * len(columns)
            for row_m in matrix.monomials:
                if row_m[i] > 0:
                    term = tuple(
                        e - 1 if j == i else e for j, e in enumerate(row_m)
                    )
                    product = tuple(a + b for a, b in zip(mon, term))
                    row[index[product]] += row_m[i]
            rows.append(row)
    rank = rank_exact(rows) if rows else 0
    return len(columns) - rank
