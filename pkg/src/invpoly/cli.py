"""Command-line front end.

Single-polynomial commands print one report as text or JSON; the
enumerate command streams one record per line plus a summary.  Exit
codes: 0 success, 1 verification failure, 2 parse or usage error,
3 polynomial not invertible, 4 limits or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Mapping, Sequence

from . import __version__
from .cleave import (
    CleaveNode,
    FermatLeaf,
    Node,
    augment,
    cleave_step,
    decompose,
    gorenstein_reduce,
    tree_dot,
)
from .core import (
    classify,
    parse_polynomial,
    polynomial_text,
    transpose,
    weight_system,
)
from .errors import (
    BadBError,
    BadShapeError,
    ConfigError,
    DefectError,
    FermatNotAugmentableError,
    LimitExceededError,
    NonSquareError,
    NoPositiveWeightsError,
    NotInvertibleError,
    NotQuasihomogeneousError,
    ParseError,
    SingularMatrixError,
    StrategyError,
)
from .harness import EnumerationSpec, run_enumeration, summarize
from .milnor import DEFAULT_LIMITS, Limits, MilnorReport, milnor_brute, milnor_closed
from .symmetry import exceptional_block_count, gamma_structure, vgit_lambda


def _limits_from_env(env: Mapping[str, str] = os.environ) -> Limits:
    """Resource bounds, optionally overridden by INVPOLY_LIMITS.

    The format is "monomials=N,socle=M"; either key may be omitted.
    """
    raw = env.get("INVPOLY_LIMITS")
    if raw is None or not raw.strip():
        return DEFAULT_LIMITS
    values: dict[str, int] = {}
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in ("monomials", "socle"):
            raise ConfigError(
                f"INVPOLY_LIMITS: expected monomials=N or socle=N, got {part!r}"
            )
        try:
            number = int(value)
        except ValueError:
            raise ConfigError(
                f"INVPOLY_LIMITS: {value.strip()!r} is not an integer"
            ) from None
        if number < 1:
            raise ConfigError(f"INVPOLY_LIMITS: {key} must be positive")
        values[key] = number
    return Limits(
        max_monomials=values.get("monomials", DEFAULT_LIMITS.max_monomials),
        max_socle=values.get("socle", DEFAULT_LIMITS.max_socle),
    )


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _group_text(structure) -> str:
    torsion = " x ".join(f"Z/{t}" for t in structure.torsion_orders)
    return f"rank {structure.free_rank}, torsion {torsion or 'trivial'}"


def cmd_classify(args: argparse.Namespace) -> int:
    matrix = parse_polynomial(args.polynomial)
    c = classify(matrix)
    ws = weight_system(matrix)
    wst = weight_system(transpose(matrix))
    gamma = gamma_structure(matrix)
    if args.format == "json":
        _emit_json(
            {
                "polynomial": polynomial_text(matrix),
                "atoms": [
                    {
                        "kind": atom.kind,
                        "exponents": list(atom.exponents),
                        "variables": list(atom.variables),
                    }
                    for atom in c.atoms
                ],
                "weights": list(ws.weights),
                "degree": ws.degree,
                "transpose_weights": list(wst.weights),
                "transpose_degree": wst.degree,
                "symmetry": gamma.to_dict(),
            }
        )
        return 0
    print(polynomial_text(matrix))
    print("  atoms: " + " (+) ".join(atom.describe() for atom in c.atoms))
    print(f"  weights {ws.weights}, degree {ws.degree}")
    print(f"  transpose weights {wst.weights}, degree {wst.degree}")
    print(f"  symmetry group: {_group_text(gamma)}")
    return 0


def cmd_milnor(args: argparse.Namespace) -> int:
    matrix = parse_polynomial(args.polynomial)
    classify(matrix)  # certify invertibility before any counting
    target = transpose(matrix) if args.transpose else matrix
    if args.brute:
        report = milnor_brute(target, _limits_from_env())
    else:
        report = MilnorReport(value=milnor_closed(classify(target)), method="ClosedForm")
    if args.format == "json":
        _emit_json({"polynomial": polynomial_text(target), **report.to_dict()})
        return 0
    print(f"mu = {report.value}  ({report.method})")
    if report.graded_dims is not None:
        print(f"  graded dims {report.graded_dims}, socle degree {report.socle_degree}")
    return 0


def cmd_symmetry(args: argparse.Namespace) -> int:
    matrix = parse_polynomial(args.polynomial)
    wall = matrix.n == matrix.k + 1
    if not wall:
        classify(matrix)
    gamma = gamma_structure(matrix)
    payload = {
        "polynomial": polynomial_text(matrix),
        "symmetry": gamma.to_dict(),
    }
    lines = [polynomial_text(matrix), f"  symmetry group: {_group_text(gamma)}"]
    if wall:
        # one more variable than monomials: wall-crossing weights exist
        v = vgit_lambda(matrix)
        blocks = exceptional_block_count(v)
        payload["vgit"] = v.to_dict()
        payload["blocks"] = blocks.to_dict()
        lines.append(f"  d = {v.d}  (sum {v.sum_d})")
        lines.append(f"  c = {v.c}  (gcd {v.gcd})")
        lines.append(
            f"  t = {blocks.count} blocks "
            f"(kernel order {blocks.kernel_order} x character sum "
            f"{blocks.character_sum})"
        )
    if args.format == "json":
        _emit_json(payload)
    else:
        print("\n".join(lines))
    return 0


def cmd_cleave(args: argparse.Namespace) -> int:
    matrix = parse_polynomial(args.polynomial)
    c = classify(matrix)
    if len(c.atoms) != 1:
        raise BadShapeError(
            "cleave expects a single loop or chain, got "
            + " (+) ".join(atom.describe() for atom in c.atoms)
        )
    atom = c.atoms[0]
    step = cleave_step(atom, args.b)
    augmented = augment(atom, args.b)
    if args.format == "json":
        _emit_json(
            {"polynomial": polynomial_text(matrix),
             "augmented": polynomial_text(augmented),
             **step.to_dict()}
        )
        return 0
    print(f"{polynomial_text(matrix)}  cleave with b = {step.b}")
    print(f"  augmented: {polynomial_text(augmented)}")
    print(f"  case {step.case}, t = {step.t}")
    print(f"  d = {step.vgit.d}, c = {step.vgit.c}, gcd = {step.vgit.gcd}")
    print(f"  w_plus  = {polynomial_text(step.w_plus.matrix())}   mu^T = {step.mu_plus}")
    print(
        f"  w_minus = {polynomial_text(step.w_minus.matrix())}   "
        f"mu^T = {step.mu_minus}   (variables {', '.join(map(str, step.minus_labels))})"
    )
    return 0


def _tree_lines(node: Node, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(node, FermatLeaf):
        lines.append(f"{pad}{node.polynomial}   mu = {node.total}")
    elif isinstance(node, CleaveNode):
        lines.append(
            f"{pad}{node.polynomial}   b = {node.step.b}, "
            f"case {node.step.case}, t = {node.step.t}"
        )
        _tree_lines(node.child, indent + 1, lines)
    else:
        lines.append(f"{pad}(+)  total = {node.total}")
        for child in node.children:
            _tree_lines(child, indent + 1, lines)


def cmd_decompose(args: argparse.Namespace) -> int:
    matrix = parse_polynomial(args.polynomial)
    tree = decompose(matrix, args.strategy)
    if args.plot:
        from . import figures  # deferred: pulls in matplotlib

        figures.tree_figure(tree, args.plot)
    if args.format == "json":
        _emit_json(tree.to_dict())
    elif args.format == "dot":
        sys.stdout.write(tree_dot(tree))
    else:
        lines = [
            f"{polynomial_text(matrix)}   "
            f"total exceptional objects: {tree.total_exceptionals}"
        ]
        _tree_lines(tree.node, 1, lines)
        print("\n".join(lines))
    return 0


def cmd_gorenstein(args: argparse.Namespace) -> int:
    matrix = parse_polynomial(args.polynomial)
    report = gorenstein_reduce(matrix)
    if args.format == "json":
        _emit_json({"polynomial": polynomial_text(matrix), **report.to_dict()})
        return 0
    print(polynomial_text(matrix))
    print(
        f"  transpose weights {report.transpose_weights}, "
        f"degree {report.transpose_degree}"
    )
    if not report.gorenstein:
        print("  Gorenstein: no (some weight does not divide the degree)")
        return 0
    print("  Gorenstein: yes, tilting object exists")
    for i, step in enumerate(report.steps, 1):
        print(
            f"  step {i}: b = {step.b}, "
            f"{polynomial_text(step.w_plus.matrix())} -> "
            f"{polynomial_text(step.w_minus.matrix())}"
        )
    terminal = " + ".join(
        f"x{i}^{e}" for i, e in enumerate(report.terminal, 1)
    )
    print(f"  terminal: {terminal}")
    return 0


def _names(raw: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def cmd_enumerate(args: argparse.Namespace) -> int:
    limits = _limits_from_env()
    spec = EnumerationSpec(
        max_vars=args.max_vars,
        max_exp=args.max_exp,
        min_exp=args.min_exp,
        kinds=_names(args.kinds),
        b_range=(args.b_min, args.b_max),
        checks=_names(args.checks),
    )
    records = run_enumeration(spec, limits, jobs=args.jobs)
    if args.plot:
        from . import figures  # deferred: pulls in matplotlib

        figures.enumeration_figure(records, args.plot)
    counts = summarize(records)
    if args.format == "json":
        for record in records:
            print(json.dumps(record.to_dict()))
        print(json.dumps({"summary": counts}))
    else:
        for record in records:
            print(
                f"{record.status:14} {record.check:12} {record.polynomial}   "
                f"expected: {record.expected}   actual: {record.actual}"
            )
        print(
            f"pass {counts['pass']}  fail {counts['fail']}  "
            f"skipped {counts['skipped']}  total {counts['total']}"
        )
    return 1 if counts["fail"] else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invpoly",
        description="Invertible polynomials: classification, Milnor numbers, "
        "cleaves, and exceptional-collection bookkeeping.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    def formats(p: argparse.ArgumentParser, *extra: str) -> None:
        p.add_argument(
            "--format", choices=("text", "json") + extra, default="text"
        )

    p = command("classify", cmd_classify, "atoms, weight systems, symmetry group")
    p.add_argument("polynomial")
    formats(p)

    p = command("milnor", cmd_milnor, "Milnor number via closed form or counting")
    p.add_argument("polynomial")
    p.add_argument("--brute", action="store_true", help="count Jacobian-ring dimensions")
    p.add_argument("--transpose", action="store_true", help="compute for the transpose")
    formats(p)

    p = command("symmetry", cmd_symmetry, "symmetry group; wall data for n x (n+1)")
    p.add_argument("polynomial")
    formats(p)

    p = command("cleave", cmd_cleave, "one cleave step of a loop or chain")
    p.add_argument("polynomial")
    p.add_argument("--b", type=int, required=True, help="exponent of the new variable")
    formats(p)

    p = command("decompose", cmd_decompose, "full recursive cleave decomposition")
    p.add_argument("polynomial")
    p.add_argument(
        "--strategy", choices=("min", "max", "gorenstein"), default="min"
    )
    p.add_argument("--plot", metavar="PATH", help="also draw the tree to a file")
    formats(p, "dot")

    p = command("gorenstein", cmd_gorenstein, "degree-balanced reduction to a Fermat sum")
    p.add_argument("polynomial")
    formats(p)

    p = command("enumerate", cmd_enumerate, "sweep atoms and verify the identities")
    p.add_argument("--kinds", default="fermat,chain,loop", help="comma-separated")
    p.add_argument("--max-vars", type=int, default=2)
    p.add_argument("--min-exp", type=int, default=2)
    p.add_argument("--max-exp", type=int, default=3)
    p.add_argument("--b-min", type=int, default=2)
    p.add_argument("--b-max", type=int, default=3)
    p.add_argument(
        "--checks",
        default="identity,signs,minors,torsion,tree-length,gorenstein,oracle",
        help="comma-separated",
    )
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--plot", metavar="PATH", help="also draw a summary chart")
    formats(p)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        BadBError,
        BadShapeError,
        FermatNotAugmentableError,
        NonSquareError,
        StrategyError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        NoPositiveWeightsError,
        NotInvertibleError,
        NotQuasihomogeneousError,
        SingularMatrixError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, LimitExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DefectError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
