"""Bulk enumeration of atoms with cross-checked verification records.

Every check computes its two sides through independent code paths:
closed-form minors against generic delete-a-column determinants, tree
totals against the transpose Milnor number, the graded brute-force
count against the product formulas.  A record passes only when the
routes agree, fails with both values recorded verbatim otherwise, and
an oracle run that blows past the resource limits is reported as
skipped rather than dropped.

The task order is canonical and independent of worker scheduling:
kind (fermat, chain, loop), then variable count, then exponent tuples
lexicographically, then per-atom checks, then the cleave exponent b
ascending with its checks.  Sign checks are only generated for
b <= a_n, the hypothesis under which the inequality is claimed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from itertools import product
from typing import Callable, Sequence

from .cleave import augment, decompose, gorenstein_reduce, restrict_pair
from .core import (
    CHAIN,
    FERMAT,
    LOOP,
    Atom,
    ExponentMatrix,
    classify,
    from_atoms,
    polynomial_text,
    transpose,
    weight_system,
)
from .errors import ConfigError, DefectError, LimitExceededError, StrategyError
from .intlin import cokernel_structure, maximal_minor_vector
from .milnor import (
    DEFAULT_LIMITS,
    Limits,
    milnor_brute,
    milnor_closed,
    milnor_of_transpose,
)
from .symmetry import chain_closed_d, loop_closed_d

KIND_NAMES = ("fermat", "chain", "loop")
CHECK_NAMES = (
    "identity",
    "signs",
    "minors",
    "torsion",
    "tree-length",
    "gorenstein",
    "oracle",
)

# checks tied to one (atom, b) pair versus checks on the atom alone
_B_CHECKS = ("identity", "signs", "minors", "torsion")
_ATOM_CHECKS = ("tree-length", "gorenstein", "oracle")

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped(limit)"


@dataclass(frozen=True)
class EnumerationSpec:
    """Bounds and check selection for one enumeration run."""

    max_vars: int
    max_exp: int
    min_exp: int = 2
    kinds: tuple[str, ...] = KIND_NAMES
    b_range: tuple[int, int] = (2, 3)
    checks: tuple[str, ...] = CHECK_NAMES

    def __post_init__(self) -> None:
        if self.min_exp < 2:
            raise ConfigError(f"min_exp must be at least 2, got {self.min_exp}")
        if self.max_vars < 1:
            raise ConfigError(f"max_vars must be at least 1, got {self.max_vars}")
        if self.max_exp < self.min_exp:
            raise ConfigError(
                f"max_exp {self.max_exp} is below min_exp {self.min_exp}"
            )
        if not self.kinds:
            raise ConfigError("no kinds selected")
        unknown = set(self.kinds) - set(KIND_NAMES)
        if unknown:
            raise ConfigError(f"unknown kinds: {sorted(unknown)}")
        if not self.checks:
            raise ConfigError("no checks selected")
        unknown = set(self.checks) - set(CHECK_NAMES)
        if unknown:
            raise ConfigError(f"unknown checks: {sorted(unknown)}")
        if self.b_range[0] < 2:
            raise ConfigError(
                f"cleave exponents start at 2, got b_range {self.b_range}"
            )


@dataclass(frozen=True)
class VerificationRecord:
    """One checked case; on failure both sides are quoted verbatim."""

    polynomial: str
    check: str
    expected: str
    actual: str
    status: str

    def to_dict(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "check": self.check,
            "expected": self.expected,
            "actual": self.actual,
            "status": self.status,
        }


def _verdict(polynomial: str, check: str, expected: str, actual: str) -> VerificationRecord:
    status = PASS if expected == actual else FAIL
    return VerificationRecord(polynomial, check, expected, actual, status)


def _check_identity(atom: Atom, b: int) -> VerificationRecord:
    augmented = augment(atom, b)
    w_plus, w_minus, _ = restrict_pair(atom, b)
    difference = milnor_closed(w_plus, of_transpose=True) - milnor_closed(
        w_minus, of_transpose=True
    )
    d = maximal_minor_vector(augmented.monomials)
    return _verdict(
        polynomial_text(augmented),
        "identity",
        f"sum_d = {difference}",
        f"sum_d = {sum(d)}",
    )


def _check_signs(atom: Atom, b: int) -> VerificationRecord:
    augmented = augment(atom, b)
    total = sum(maximal_minor_vector(augmented.monomials))
    if atom.kind == LOOP:
        expected, ok = "sum_d > 0", total > 0
    else:
        expected, ok = "sum_d >= 0", total >= 0
    actual = expected if ok else f"sum_d = {total}"
    return VerificationRecord(
        polynomial_text(augmented), "signs", expected, actual, PASS if ok else FAIL
    )


def _check_minors(atom: Atom, b: int) -> VerificationRecord:
    augmented = augment(atom, b)
    if atom.kind == LOOP:
        closed = loop_closed_d(atom.exponents, b)
    else:
        closed = chain_closed_d(atom.exponents, b)
    minors = maximal_minor_vector(augmented.monomials)
    return _verdict(
        polynomial_text(augmented), "minors", str(tuple(closed)), str(tuple(minors))
    )


def _check_torsion(atom: Atom, b: int) -> VerificationRecord:
    augmented = augment(atom, b)
    d = maximal_minor_vector(augmented.monomials)
    torsion = cokernel_structure(augmented.monomials).torsion_order_total
    return _verdict(
        polynomial_text(augmented), "torsion", str(math.gcd(*d)), str(torsion)
    )


def _check_tree_length(matrix: ExponentMatrix) -> VerificationRecord:
    text = polynomial_text(matrix)
    expected = milnor_of_transpose(matrix)
    try:
        totals = {
            name: decompose(matrix, name).total_exceptionals
            for name in ("min", "max")
        }
    except (StrategyError, DefectError) as exc:
        return VerificationRecord(
            text, "tree-length", str(expected), f"error: {exc}", FAIL
        )
    if totals["min"] == totals["max"] == expected:
        actual = str(expected)
    else:
        actual = f"min = {totals['min']}, max = {totals['max']}"
    return _verdict(text, "tree-length", str(expected), actual)


def _check_gorenstein(matrix: ExponentMatrix) -> VerificationRecord:
    text = polynomial_text(matrix)
    ws = weight_system(transpose(matrix))
    divisible = all(ws.degree % r == 0 for r in ws.weights)
    expected = "tilting" if divisible else "not Gorenstein"
    try:
        report = gorenstein_reduce(matrix)
    except DefectError as exc:
        return VerificationRecord(
            text, "gorenstein", expected, f"error: {exc}", FAIL
        )
    if not report.gorenstein:
        actual = "not Gorenstein"
    elif any(step.vgit.sum_d != 0 for step in report.steps):
        actual = "unbalanced step"
    elif sorted(report.terminal) != sorted(ws.degree // r for r in ws.weights):
        actual = f"terminal {sorted(report.terminal)}"
    elif math.prod(e - 1 for e in report.terminal) != milnor_of_transpose(matrix):
        actual = "Milnor number not conserved"
    else:
        actual = "tilting"
    return _verdict(text, "gorenstein", expected, actual)


def _check_oracle(matrix: ExponentMatrix, limits: Limits) -> VerificationRecord:
    text = polynomial_text(matrix)
    expected = str(milnor_closed(classify(matrix)))
    try:
        report = milnor_brute(matrix, limits)
    except LimitExceededError:
        return VerificationRecord(text, "oracle", expected, "limit exceeded", SKIPPED)
    return _verdict(text, "oracle", expected, str(report.value))


_B_DISPATCH: dict[str, Callable[[Atom, int], VerificationRecord]] = {
    "identity": _check_identity,
    "signs": _check_signs,
    "minors": _check_minors,
    "torsion": _check_torsion,
}


def _tasks(
    spec: EnumerationSpec, limits: Limits
) -> list[Callable[[], VerificationRecord]]:
    atom_checks = [c for c in _ATOM_CHECKS if c in spec.checks]
    b_checks = [c for c in _B_CHECKS if c in spec.checks]
    b_lo, b_hi = spec.b_range
    tasks: list[Callable[[], VerificationRecord]] = []
    for kind, name in ((FERMAT, "fermat"), (CHAIN, "chain"), (LOOP, "loop")):
        if name not in spec.kinds:
            continue
        if kind == FERMAT:
            sizes: Sequence[int] = (1,)
        elif kind == CHAIN:
            sizes = range(1, spec.max_vars + 1)
        else:
            sizes = range(2, spec.max_vars + 1)
        for n in sizes:
            for exps in product(range(spec.min_exp, spec.max_exp + 1), repeat=n):
                atom = Atom(kind, exps, tuple(range(1, n + 1)))
                matrix = from_atoms([atom]).matrix()
                for check in atom_checks:
                    if check == "tree-length":
                        tasks.append(partial(_check_tree_length, matrix))
                    elif check == "gorenstein":
                        tasks.append(partial(_check_gorenstein, matrix))
                    else:
                        tasks.append(partial(_check_oracle, matrix, limits))
                if kind == FERMAT:
                    continue
                for b in range(b_lo, b_hi + 1):
                    for check in b_checks:
                        if check == "signs" and b > exps[-1]:
                            continue
                        tasks.append(partial(_B_DISPATCH[check], atom, b))
    return tasks


def run_enumeration(
    spec: EnumerationSpec, limits: Limits = DEFAULT_LIMITS, jobs: int = 1
) -> list[VerificationRecord]:
    """All records for the spec, always in canonical order.

    With jobs > 1 the checks run on a thread pool; results are
    collected back into task order, so the output is identical to a
    sequential run.
    """
    tasks = _tasks(spec, limits)
    if jobs <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda task: task(), tasks))


def summarize(records: Sequence[VerificationRecord]) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for record in records:
        if record.status == PASS:
            counts["pass"] += 1
        elif record.status == FAIL:
            counts["fail"] += 1
        else:
            counts["skipped"] += 1
    counts["total"] = len(records)
    return counts
