"""Exponent matrices of invertible polynomials.

An invertible polynomial in n variables has exactly n monomials and an
exponent matrix A that is invertible over Q, and it is quasihomogeneous
with positive weights.  Up to rescaling coefficients, every such
polynomial is a disjoint (Thom-Sebastiani) sum of three kinds of atoms:

    Fermat  x^r
    Chain   x1^a1 x2 + x2^a2 x3 + ... + xn^an
    Loop    x1^a1 x2 + x2^a2 x3 + ... + xn^an x1

This module parses polynomial text into exponent matrices, recognizes
the atom decomposition, transposes, and solves for weight systems.
Coefficients carry no information here and are normalized away.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadShapeError,
    CoefficientWarning,
    DefectError,
    NonSquareError,
    NoPositiveWeightsError,
    NotInvertibleError,
    NotInvertibleReason,
    ParseError,
    SingularMatrixError,
    ZeroCoefficientError,
)
from .intlin import inverse_rational, mat_vec

FERMAT = "Fermat"
CHAIN = "Chain"
LOOP = "Loop"


@dataclass(frozen=True)
class ExponentMatrix:
    """k monomials in n variables; entry (i, j) is the exponent of x_{j+1}
    in monomial i.  Rows are monomials, columns are variables."""

    monomials: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(e) for e in row) for row in self.monomials)
        object.__setattr__(self, "monomials", rows)
        if not rows:
            raise BadShapeError("empty exponent matrix")
        width = len(rows[0])
        if width == 0 or any(len(row) != width for row in rows):
            raise BadShapeError("monomial rows have unequal lengths")
        for row in rows:
            if any(e < 0 for e in row):
                raise BadShapeError("negative exponent")
            if all(e == 0 for e in row):
                raise BadShapeError("constant monomial (all-zero row)")
        for j in range(width):
            if all(row[j] == 0 for row in rows):
                raise BadShapeError(f"variable x{j + 1} appears in no monomial")

    @property
    def k(self) -> int:
        return len(self.monomials)

    @property
    def n(self) -> int:
        return len(self.monomials[0])

    def to_dict(self) -> dict:
        return {"monomials": [list(row) for row in self.monomials]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "ExponentMatrix":
        if "monomials" not in data:
            raise BadShapeError("missing 'monomials' key")
        return cls(tuple(tuple(row) for row in data["monomials"]))


def polynomial_text(matrix: ExponentMatrix) -> str:
    """Render back to the textual form, e.g. ``x1^3*x2 + x2^2``."""
    terms = []
    for row in matrix.monomials:
        factors = []
        for j, e in enumerate(row):
            if e == 1:
                factors.append(f"x{j + 1}")
            elif e > 1:
                factors.append(f"x{j + 1}^{e}")
        terms.append("*".join(factors))
    return " + ".join(terms)


# --- parsing ---------------------------------------------------------------

_PLUS, _STAR, _CARET, _VAR, _INT = "plus", "star", "caret", "var", "int"


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "+":
            tokens.append((_PLUS, 0, i))
            i += 1
        elif ch == "*":
            tokens.append((_STAR, 0, i))
            i += 1
        elif ch == "^":
            tokens.append((_CARET, 0, i))
            i += 1
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("expected a variable index after 'x'", i + 1)
            index = int(text[i + 1 : j])
            if index < 1:
                raise ParseError("variable indices start at 1", i + 1)
            tokens.append((_VAR, index, i))
            i = j
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append((_INT, int(text[i:j]), i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_polynomial(text: str) -> ExponentMatrix:
    """Parse ``x1^3*x2 + x2^2`` style text into an exponent matrix.

    Grammar: a sum of terms; a term is an optional integer coefficient
    followed by '*'-joined factors; a factor is a variable with an
    optional positive exponent.  Variable indices must cover 1..n with
    no gaps.  Coefficients are legal input but carry no information, so
    they are dropped (with a CoefficientWarning when any differs from 1).
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)

    terms: list[dict[int, int]] = []
    first_seen: dict[int, int] = {}
    noisy_coefficient = False
    pos = 0

    def peek(i):
        return tokens[i][0] if i < len(tokens) else None

    i = 0
    while True:
        exponents: dict[int, int] = {}
        if peek(i) == _INT:
            kind, value, pos = tokens[i]
            if value == 0:
                raise ZeroCoefficientError("term has coefficient 0", pos)
            if value != 1:
                noisy_coefficient = True
            i += 1
            if peek(i) != _STAR:
                raise ParseError("expected '*' after a coefficient", pos)
            i += 1
        while True:
            if peek(i) != _VAR:
                where = tokens[i][2] if i < len(tokens) else len(text)
                raise ParseError("expected a variable like 'x1'", where)
            kind, index, pos = tokens[i]
            first_seen.setdefault(index, pos)
            i += 1
            exp = 1
            if peek(i) == _CARET:
                i += 1
                if peek(i) != _INT:
                    where = tokens[i][2] if i < len(tokens) else len(text)
                    raise ParseError("expected an integer exponent after '^'", where)
                kind, exp, pos = tokens[i]
                if exp < 1:
                    raise ParseError("exponents must be at least 1", pos)
                i += 1
            exponents[index] = exponents.get(index, 0) + exp
            if peek(i) == _STAR:
                i += 1
                continue
            break
        terms.append(exponents)
        if peek(i) == _PLUS:
            i += 1
            continue
        if i < len(tokens):
            raise ParseError("expected '+' between terms", tokens[i][2])
        break

    n = max(first_seen)
    for index in range(1, n + 1):
        if index not in first_seen:
            later = min(p for v, p in first_seen.items() if v > index)
            raise ParseError(
                f"variable indices must be contiguous from x1; x{index} is missing",
                later,
            )
    if noisy_coefficient:
        warnings.warn(
            "coefficients do not affect any computed invariant; normalized to 1",
            CoefficientWarning,
            stacklevel=2,
        )
    rows = tuple(
        tuple(term.get(j, 0) for j in range(1, n + 1)) for term in terms
    )
    return ExponentMatrix(rows)


# --- classification --------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    """One Fermat / Chain / Loop summand.

    ``exponents`` are the a_i along the atom (a single r for Fermat);
    ``variables`` are the original 1-based variable indices, in atom
    order.  Chains are oriented with the pure-power monomial last; loops
    are rotated to the lexicographically smallest exponent sequence.
    """

    kind: str
    exponents: tuple[int, ...]
    variables: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(a) for a in self.exponents))
        object.__setattr__(self, "variables", tuple(int(v) for v in self.variables))
        if self.kind not in (FERMAT, CHAIN, LOOP):
            raise BadShapeError(f"unknown atom kind {self.kind!r}")
        if len(self.exponents) != len(self.variables):
            raise BadShapeError("exponent/variable length mismatch")
        if len(set(self.variables)) != len(self.variables):
            raise BadShapeError("repeated variable in atom")
        if any(a < 2 for a in self.exponents):
            raise BadShapeError("atom exponents must be at least 2")
        if self.kind == FERMAT and len(self.exponents) != 1:
            raise BadShapeError("Fermat atoms have exactly one exponent")
        if self.kind == CHAIN and len(self.exponents) < 1:
            raise BadShapeError("empty chain")
        if self.kind == LOOP and len(self.exponents) < 2:
            raise BadShapeError("loops need at least two variables")

    @property
    def size(self) -> int:
        return len(self.exponents)

    def local_matrix(self) -> list[list[int]]:
        """Exponent matrix of the atom alone, variables in atom order."""
        n = self.size
        rows = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.exponents):
            rows[i][i] = a
            if self.kind == CHAIN and i + 1 < n:
                rows[i][i + 1] = 1
            elif self.kind == LOOP:
                rows[i][(i + 1) % n] = 1
        return rows

    def describe(self) -> str:
        inner = ",".join(str(a) for a in self.exponents)
        return f"{self.kind}({inner})"


@dataclass(frozen=True)
class Classification:
    """Atom decomposition of an invertible polynomial.

    ``permutation`` maps each original variable (index v corresponds to
    x_{v+1}) to its (atom, position) slot.
    """

    atoms: tuple[Atom, ...]
    permutation: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.permutation)

    def matrix(self) -> ExponentMatrix:
        """Reassemble the exponent matrix, rows in atom order, columns
        in original variable order."""
        n = self.n
        rows = []
        for atom in self.atoms:
            local = atom.local_matrix()
            for local_row in local:
                row = [0] * n
                for pos, e in enumerate(local_row):
                    row[atom.variables[pos] - 1] = e
                rows.append(tuple(row))
        return ExponentMatrix(tuple(rows))

    def describe(self) -> str:
        return " + ".join(atom.describe() for atom in self.atoms)


def _row_head(row_index: int, row: Sequence[int]) -> tuple[int, int, int | None]:
    """Return (head variable, its exponent, aux variable or None), all
    0-based, for one monomial row.  Rejects rows that fit no atom."""
    support = [(j, e) for j, e in enumerate(row) if e != 0]
    if len(support) == 1:
        ((j, e),) = support
        if e < 2:
            raise NotInvertibleError(
                NotInvertibleReason.EXPONENT_BELOW_TWO,
                f"monomial {row_index + 1} is linear in x{j + 1}",
            )
        return j, e, None
    if len(support) == 2:
        (j1, e1), (j2, e2) = support
        if e1 == 1 and e2 >= 2:
            return j2, e2, j1
        if e2 == 1 and e1 >= 2:
            return j1, e1, j2
        if e1 == 1 and e2 == 1:
            raise NotInvertibleError(
                NotInvertibleReason.EXPONENT_BELOW_TWO,
                f"monomial {row_index + 1} has no variable of exponent >= 2",
            )
        raise NotInvertibleError(
            NotInvertibleReason.BAD_ROW_SHAPE,
            f"monomial {row_index + 1} has two variables of exponent >= 2",
        )
    raise NotInvertibleError(
        NotInvertibleReason.BAD_ROW_SHAPE,
        f"monomial {row_index + 1} involves {len(support)} variables",
    )


def classify(matrix: ExponentMatrix) -> Classification:
    """Decompose into Fermat / Chain / Loop atoms.

    Each monomial must be a power of one variable, optionally times a
    single auxiliary variable; the head-to-aux edges must then split
    into paths ending at a pure power (chains) and cycles (loops).
    Square shape, nonzero determinant, and positive weights are checked
    as well, so a successful return certifies invertibility.
    """
    if matrix.k != matrix.n:
        raise NotInvertibleError(
            NotInvertibleReason.NON_SQUARE,
            f"{matrix.k} monomials in {matrix.n} variables",
        )
    n = matrix.n

    aux: dict[int, int | None] = {}
    head_exp: dict[int, int] = {}
    for r, row in enumerate(matrix.monomials):
        head, exponent, auxiliary = _row_head(r, row)
        if head in aux:
            raise NotInvertibleError(
                NotInvertibleReason.BAD_ROW_SHAPE,
                f"two monomials are powers of x{head + 1}",
            )
        aux[head] = auxiliary
        head_exp[head] = exponent
    # n distinct heads among n variables: the assignment is a bijection

    in_from: dict[int, int] = {}
    for head, auxiliary in aux.items():
        if auxiliary is None:
            continue
        if auxiliary in in_from:
            raise NotInvertibleError(
                NotInvertibleReason.BAD_ROW_SHAPE,
                f"x{auxiliary + 1} is the auxiliary variable of two monomials",
            )
        in_from[auxiliary] = head

    atoms = []
    seen: set[int] = set()
    # chains and Fermats: walk back from each pure-power monomial
    for sink in sorted(v for v, a in aux.items() if a is None):
        path = [sink]
        while path[-1] in in_from:
            path.append(in_from[path[-1]])
        path.reverse()
        seen.update(path)
        variables = tuple(v + 1 for v in path)
        exponents = tuple(head_exp[v] for v in path)
        if len(path) == 1:
            atoms.append(Atom(FERMAT, exponents, variables))
        else:
            atoms.append(Atom(CHAIN, exponents, variables))
    # everything left sits on cycles
    for start in sorted(set(range(n)) - seen):
        if start in seen:
            continue
        cycle = [start]
        v = aux[start]
        while v != start:
            cycle.append(v)
            v = aux[v]
        seen.update(cycle)
        pairs = [(head_exp[v], v + 1) for v in cycle]
        rotations = [pairs[i:] + pairs[:i] for i in range(len(pairs))]
        best = min(
            rotations,
            key=lambda rot: (tuple(e for e, _ in rot), tuple(v for _, v in rot)),
        )
        atoms.append(
            Atom(LOOP, tuple(e for e, _ in best), tuple(v for _, v in best))
        )

    atoms.sort(key=lambda atom: min(atom.variables))
    slots: list[tuple[int, int]] = [(-1, -1)] * n
    for ai, atom in enumerate(atoms):
        for pos, v in enumerate(atom.variables):
            slots[v - 1] = (ai, pos)
    result = Classification(atoms=tuple(atoms), permutation=tuple(slots))

    # with all atom exponents >= 2 these cannot fire, but they are part
    # of the contract, so check them anyway
    weight_system(result.matrix())
    return result


def transpose(matrix: ExponentMatrix) -> ExponentMatrix:
    """Exponent matrix of the transposed polynomial (A -> A^T)."""
    if matrix.k != matrix.n:
        raise NonSquareError(f"transpose of a {matrix.k}x{matrix.n} matrix")
    n = matrix.n
    return ExponentMatrix(
        tuple(tuple(matrix.monomials[i][j] for i in range(n)) for j in range(n))
    )


@dataclass(frozen=True)
class WeightSystem:
    """Positive integral weights q with A·q = d·(1,...,1), d minimal."""

    weights: tuple[int, ...]
    degree: int


def weight_system(matrix: ExponentMatrix) -> WeightSystem:
    """Solve A·q = d·(1,...,1) exactly, minimal positive integral d.

    Raises SingularMatrixError when A has no inverse and
    NoPositiveWeightsError when some weight comes out non-positive.
    """
    if matrix.k != matrix.n:
        raise NonSquareError(f"weight system of a {matrix.k}x{matrix.n} matrix")
    try:
        inv = inverse_rational(matrix.monomials)
    except SingularMatrixError:
        raise SingularMatrixError(
            "exponent matrix is singular; no weight system"
        ) from None
    solution = [sum(row, Fraction(0)) for row in inv]  # A^{-1}·(1,...,1)
    if any(s <= 0 for s in solution):
        raise NoPositiveWeightsError("weight system has a non-positive entry")
    degree = math.lcm(*(s.denominator for s in solution))
    weights = tuple(int(s * degree) for s in solution)
    check = mat_vec(matrix.monomials, weights)
    if any(c != degree for c in check):
        raise DefectError("weight system does not solve A*q = d*1")
    return WeightSystem(weights=weights, degree=degree)


def thom_sebastiani(m1: ExponentMatrix, m2: ExponentMatrix) -> ExponentMatrix:
    """Block-diagonal join on disjoint variable sets."""
    n1, n2 = m1.n, m2.n
    rows = [tuple(row) + (0,) * n2 for row in m1.monomials]
    rows += [(0,) * n1 + tuple(row) for row in m2.monomials]
    return ExponentMatrix(tuple(rows))


def from_atoms(atoms: Iterable[Atom]) -> Classification:
    """Build a Classification directly from atoms covering x1..xn."""
    atoms = tuple(sorted(atoms, key=lambda atom: min(atom.variables)))
    variables = [v for atom in atoms for v in atom.variables]
    n = len(variables)
    if sorted(variables) != list(range(1, n + 1)):
        raise BadShapeError("atom variables must cover 1..n exactly once")
    slots: list[tuple[int, int]] = [(-1, -1)] * n
    for ai, atom in enumerate(atoms):
        for pos, v in enumerate(atom.variables):
            slots[v - 1] = (ai, pos)
    return Classification(atoms=atoms, permutation=tuple(slots))
