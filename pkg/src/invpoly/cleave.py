"""Cleave steps, recursive decomposition, and the Gorenstein reduction.

A cleave augments a loop or chain atom w with one extra variable:

    loop   x1^a1 x2 + ... + x_n^an x1        ->  ... + x_n^an x1 x_{n+1}^b
    chain  x1^a1 x2 + ... + x_n^an           ->  ... + x_n^an x_{n+1}^b

Restricting the augmented polynomial W to x_{n+1} = 1 recovers w
(called w_plus); restricting to x_n = 1 gives a smaller polynomial
w_minus: a loop turns into the chain (b, a_1, ..., a_{n-1}) headed by
the new variable, a chain splits into chain(a_1, ..., a_{n-1}) plus a
Fermat x^b.  The signed minors of W decide which side of the wall has
extra exceptional objects; their sum equals mu(w_plus^T) -
mu(w_minus^T), and iterating the cleave all the way down writes
mu(w^T) as a sum of block counts.  With the degree-balanced choice
b = d^T / r_n every step has minor sum zero, and the iteration ends in
the Fermat sum with exponents d^T / r_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .core import (
    CHAIN,
    FERMAT,
    LOOP,
    Atom,
    Classification,
    ExponentMatrix,
    classify,
    from_atoms,
    polynomial_text,
    transpose,
    weight_system,
)
from .errors import (
    BadBError,
    DivisibilityLostError,
    FermatNotAugmentableError,
    IdentityViolatedError,
    LengthMismatchError,
    NonzeroSumDError,
    StrategyError,
    TerminalMismatchError,
)
from .milnor import milnor_closed
from .symmetry import VgitData, vgit_lambda

CASE_A, CASE_B, CASE_C = "A", "B", "C"


def _atom_text(atom: Atom) -> str:
    """Polynomial text of one atom using its own variable labels."""
    n = atom.size
    terms = []
    for i, a in enumerate(atom.exponents):
        factors = [f"x{atom.variables[i]}^{a}"]
        if atom.kind == CHAIN and i + 1 < n:
            factors.append(f"x{atom.variables[i + 1]}")
        elif atom.kind == LOOP:
            factors.append(f"x{atom.variables[(i + 1) % n]}")
        terms.append("*".join(factors))
    return " + ".join(terms)


def augment(atom: Atom, b: int) -> ExponentMatrix:
    """Attach x_{n+1}^b to the atom's last monomial.

    Works in local coordinates 1..n+1 regardless of the atom's original
    variable labels; the result has n monomials in n+1 variables.
    """
    if atom.kind == FERMAT:
        raise FermatNotAugmentableError("a pure power has no cleave variable")
    if b < 2:
        raise BadBError(f"cleave exponent must be at least 2, got {b}")
    n = atom.size
    rows = [[0] * (n + 1) for _ in range(n)]
    for i, a in enumerate(atom.exponents):
        rows[i][i] = a
        if atom.kind == CHAIN and i + 1 < n:
            rows[i][i + 1] = 1
        elif atom.kind == LOOP:
            rows[i][(i + 1) % n] = 1
    rows[n - 1][n] = b
    return ExponentMatrix(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class CleaveStep:
    """One wall-crossing: the atom w_plus against its cleave w_minus.

    ``minus_labels`` names w_minus's local variables inside the
    augmented polynomial (label n+1 is the new variable).  ``i_plus``
    and ``i_minus`` are the 1-based positions where c is positive
    respectively negative.
    """

    w_plus: Classification
    w_minus: Classification
    b: int
    vgit: VgitData
    case: str
    t: int
    mu_plus: int
    mu_minus: int
    minus_labels: tuple[int, ...]
    i_plus: tuple[int, ...]
    i_minus: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "w_plus": polynomial_text(self.w_plus.matrix()),
            "w_minus": polynomial_text(self.w_minus.matrix()),
            "b": self.b,
            "case": self.case,
            "t": self.t,
            "mu_plus": self.mu_plus,
            "mu_minus": self.mu_minus,
            "minus_variables": list(self.minus_labels),
            "vgit": self.vgit.to_dict(),
        }


def restrict_pair(
    atom: Atom, b: int
) -> tuple[Classification, Classification, tuple[int, ...]]:
    """The two restrictions of the augmented polynomial.

    w_plus (x_{n+1} = 1) is the atom itself in local coordinates;
    w_minus (x_n = 1) is the smaller polynomial, with the returned
    labels naming its local variables inside the augmentation.
    """
    if atom.kind == FERMAT:
        raise FermatNotAugmentableError("a pure power has no cleave variable")
    if b < 2:
        raise BadBError(f"cleave exponent must be at least 2, got {b}")
    n = atom.size
    w_plus = from_atoms(
        [Atom(atom.kind, atom.exponents, tuple(range(1, n + 1)))]
    )
    if atom.kind == LOOP:
        # x_{n+1} heads the new chain, then the truncated loop body
        exponents = (b,) + atom.exponents[: n - 1]
        minus_atoms = [_chain_or_fermat(exponents, tuple(range(1, n + 1)))]
        minus_labels = (n + 1,) + tuple(range(1, n))
    else:
        minus_atoms = []
        if n > 1:
            minus_atoms.append(
                _chain_or_fermat(atom.exponents[: n - 1], tuple(range(1, n)))
            )
        minus_atoms.append(Atom(FERMAT, (b,), (n,)))
        minus_labels = tuple(range(1, n)) + (n + 1,)
    return w_plus, from_atoms(minus_atoms), minus_labels


def cleave_step(atom: Atom, b: int) -> CleaveStep:
    """Augment, restrict both ways, and verify the Milnor identity.

    The identity mu(w_plus^T) - mu(w_minus^T) = sum(d) must hold for
    every valid atom and b; a violation is a bug, not bad input.
    """
    augmented = augment(atom, b)
    w_plus, w_minus, minus_labels = restrict_pair(atom, b)
    vgit = vgit_lambda(augmented)
    mu_plus = milnor_closed(w_plus, of_transpose=True)
    mu_minus = milnor_closed(w_minus, of_transpose=True)
    if mu_plus - mu_minus != vgit.sum_d:
        raise IdentityViolatedError(
            f"mu difference {mu_plus - mu_minus} != sum_d {vgit.sum_d} "
            f"for {atom.describe()} with b={b}"
        )
    if vgit.sum_d > 0:
        case = CASE_C
    elif vgit.sum_d == 0:
        case = CASE_B
    else:
        case = CASE_A
    return CleaveStep(
        w_plus=w_plus,
        w_minus=w_minus,
        b=b,
        vgit=vgit,
        case=case,
        t=abs(vgit.sum_d),
        mu_plus=mu_plus,
        mu_minus=mu_minus,
        minus_labels=minus_labels,
        i_plus=tuple(i + 1 for i, ci in enumerate(vgit.c) if ci > 0),
        i_minus=tuple(i + 1 for i, ci in enumerate(vgit.c) if ci < 0),
    )


def _chain_or_fermat(exponents: tuple[int, ...], variables: tuple[int, ...]) -> Atom:
    if len(exponents) == 1:
        return Atom(FERMAT, exponents, variables)
    return Atom(CHAIN, exponents, variables)


# --- decomposition trees -----------------------------------------------------


@dataclass(frozen=True)
class FermatLeaf:
    """Terminal x^r: its own exceptional collection has length r - 1."""

    r: int
    polynomial: str

    @property
    def total(self) -> int:
        return self.r - 1

    def to_dict(self) -> dict:
        return {
            "kind": "fermat",
            "polynomial": self.polynomial,
            "r": self.r,
            "total": self.total,
        }


@dataclass(frozen=True)
class CleaveNode:
    """A cleave step contributing t blocks on top of its w_minus tree."""

    step: CleaveStep
    child: "Node"
    polynomial: str

    @property
    def total(self) -> int:
        return self.step.t + self.child.total

    def to_dict(self) -> dict:
        return {
            "kind": "cleave",
            "polynomial": self.polynomial,
            "b": self.step.b,
            "case": self.step.case,
            "t": self.step.t,
            "total": self.total,
            "child": self.child.to_dict(),
        }


@dataclass(frozen=True)
class TensorNode:
    """Disjoint-variable sum; collection lengths multiply."""

    children: tuple["Node", ...]
    polynomial: str

    @property
    def total(self) -> int:
        return math.prod(child.total for child in self.children)

    def to_dict(self) -> dict:
        return {
            "kind": "tensor",
            "polynomial": self.polynomial,
            "total": self.total,
            "children": [child.to_dict() for child in self.children],
        }


Node = Union[FermatLeaf, CleaveNode, TensorNode]

Strategy = Union[str, int]


@dataclass(frozen=True)
class DecompositionTree:
    root: ExponentMatrix
    node: Node
    total_exceptionals: int

    def to_dict(self) -> dict:
        return {
            "polynomial": polynomial_text(self.root),
            "total_exceptionals": self.total_exceptionals,
            "tree": self.node.to_dict(),
        }


def _gorenstein_b(atom: Atom) -> int:
    local = ExponentMatrix(tuple(tuple(r) for r in atom.local_matrix()))
    ws = weight_system(transpose(local))
    if any(ws.degree % w for w in ws.weights):
        raise StrategyError(
            f"{atom.describe()} is not Gorenstein: weights {ws.weights} "
            f"do not all divide {ws.degree}"
        )
    return ws.degree // ws.weights[-1]


def _policy_b(strategy: Strategy, atom: Atom) -> int:
    if isinstance(strategy, int):
        return strategy
    if strategy == "min":
        return 2
    if strategy == "max":
        return atom.exponents[-1]
    if strategy == "gorenstein":
        return _gorenstein_b(atom)
    raise StrategyError(f"unknown strategy {strategy!r}")


def _atom_node(atom: Atom, strategy: Strategy) -> Node:
    if atom.kind == FERMAT or (atom.kind == CHAIN and atom.size == 1):
        return FermatLeaf(r=atom.exponents[0], polynomial=_atom_text(atom))
    step = cleave_step(atom, _policy_b(strategy, atom))
    if step.case == CASE_A:
        raise StrategyError(
            f"b={step.b} exceeds the last exponent of {atom.describe()}; "
            "the block count would not telescope"
        )
    child = _classification_node(step.w_minus, strategy)
    return CleaveNode(step=step, child=child, polynomial=_atom_text(atom))


def _classification_node(c: Classification, strategy: Strategy) -> Node:
    nodes = tuple(_atom_node(atom, strategy) for atom in c.atoms)
    if len(nodes) == 1:
        return nodes[0]
    return TensorNode(
        children=nodes,
        polynomial=" + ".join(_atom_text(atom) for atom in c.atoms),
    )


def decompose(matrix: ExponentMatrix, strategy: Strategy = "min") -> DecompositionTree:
    """Full recursive cleave decomposition.

    Loops cleave into chains, chains into a shorter chain plus a
    Fermat, Fermats terminate; the grand total of block counts must
    equal mu(w^T) no matter which valid b-policy drove the choices.
    """
    if not isinstance(strategy, int) and strategy not in (
        "min",
        "max",
        "gorenstein",
    ):
        raise StrategyError(f"unknown strategy {strategy!r}")
    c = classify(matrix)
    node = _classification_node(c, strategy)
    expected = milnor_closed(c, of_transpose=True)
    if node.total != expected:
        raise LengthMismatchError(
            f"tree total {node.total} != transpose Milnor number {expected}"
        )
    return DecompositionTree(
        root=matrix, node=node, total_exceptionals=node.total
    )


def tree_dot(tree: DecompositionTree) -> str:
    """Graphviz rendering: one node per cleave/tensor/leaf, cleave edges
    labeled with their block count t."""
    lines = [
        "digraph decomposition {",
        "  rankdir=TB;",
        '  node [shape=box, fontname="monospace"];',
    ]
    counter = 0

    def emit(node: Node) -> int:
        nonlocal counter
        name = counter
        counter += 1
        if isinstance(node, FermatLeaf):
            lines.append(
                f'  n{name} [label="{node.polynomial}\\nmu = {node.total}"];'
            )
        elif isinstance(node, CleaveNode):
            lines.append(
                f'  n{name} [label="{node.polynomial}\\nb = {node.step.b},'
                f' case {node.step.case}"];'
            )
            child = emit(node.child)
            lines.append(f'  n{name} -> n{child} [label="t = {node.step.t}"];')
        else:
            lines.append(f'  n{name} [label="(+)"];')
            for part in node.children:
                child = emit(part)
                lines.append(f"  n{name} -> n{child};")
        return name

    emit(tree.node)
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- Gorenstein reduction ----------------------------------------------------


@dataclass(frozen=True)
class GorensteinReport:
    """Outcome of the degree-balanced reduction to a Fermat sum."""

    gorenstein: bool
    steps: tuple[CleaveStep, ...]
    terminal: tuple[int, ...]
    tilting: bool
    transpose_weights: tuple[int, ...]
    transpose_degree: int

    def to_dict(self) -> dict:
        return {
            "gorenstein": self.gorenstein,
            "tilting": self.tilting,
            "transpose_weights": list(self.transpose_weights),
            "transpose_degree": self.transpose_degree,
            "terminal": list(self.terminal),
            "steps": [step.to_dict() for step in self.steps],
        }


def gorenstein_reduce(matrix: ExponentMatrix) -> GorensteinReport:
    """Iterate b = d^T / r_n cleaves down to the Fermat sum.

    The transpose weight system (r, d^T) decides membership: if some
    r_i fails to divide d^T the report is negative and nothing is
    cleaved.  Otherwise every step must balance (sum d = 0) and the
    terminal exponents must come out as d^T / r_i; both are asserted,
    and the weight systems are recomputed at every stage instead of
    trusting that divisibility survives.
    """
    c = classify(matrix)
    ws = weight_system(transpose(matrix))
    if any(ws.degree % r for r in ws.weights):
        return GorensteinReport(
            gorenstein=False,
            steps=(),
            terminal=(),
            tilting=False,
            transpose_weights=ws.weights,
            transpose_degree=ws.degree,
        )

    steps: list[CleaveStep] = []
    collected: list[int] = []

    def reduce_atom(atom: Atom) -> None:
        if atom.kind == FERMAT or (atom.kind == CHAIN and atom.size == 1):
            collected.append(atom.exponents[0])
            return
        local = ExponentMatrix(tuple(tuple(r) for r in atom.local_matrix()))
        stage = weight_system(transpose(local))
        if any(stage.degree % r for r in stage.weights):
            raise DivisibilityLostError(
                f"stage weights {stage.weights} stopped dividing {stage.degree} "
                f"at {atom.describe()}"
            )
        b = stage.degree // stage.weights[-1]
        step = cleave_step(atom, b)
        if step.vgit.sum_d != 0:
            raise NonzeroSumDError(
                f"balanced cleave of {atom.describe()} has sum_d = "
                f"{step.vgit.sum_d}"
            )
        steps.append(step)
        for child in step.w_minus.atoms:
            reduce_atom(child)

    for atom in c.atoms:
        reduce_atom(atom)

    expected = tuple(ws.degree // r for r in ws.weights)
    if sorted(collected) != sorted(expected):
        raise TerminalMismatchError(
            f"terminal powers {sorted(collected)} != {sorted(expected)}"
        )
    return GorensteinReport(
        gorenstein=True,
        steps=tuple(steps),
        terminal=expected,
        tilting=True,
        transpose_weights=ws.weights,
        transpose_degree=ws.degree,
    )
