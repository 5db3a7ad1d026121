"""Figure rendering for decomposition trees and enumeration summaries.

Everything draws through the Agg backend and goes straight to a file,
so plotting works on headless machines and never pops a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .cleave import CleaveNode, DecompositionTree, FermatLeaf, Node
from .core import polynomial_text
from .harness import VerificationRecord

_STATUS_COLORS = (
    ("pass", "#4a9"),
    ("fail", "#c44"),
    ("skipped", "#999"),
)


def _layout(
    node: Node,
    depth: int,
    counter: list[int],
    boxes: list[tuple[float, float, str]],
    edges: list[tuple[float, float, float, float, str]],
) -> tuple[float, float]:
    """Place one subtree; returns the node's (x, y).

    Leaves advance a shared x counter; a cleave sits directly above its
    only child, a tensor node centers above its children.
    """
    y = -float(depth)
    if isinstance(node, FermatLeaf):
        x = float(counter[0])
        counter[0] += 1
        boxes.append((x, y, f"{node.polynomial}\nmu = {node.total}"))
        return x, y
    if isinstance(node, CleaveNode):
        cx, cy = _layout(node.child, depth + 1, counter, boxes, edges)
        label = f"{node.polynomial}\nb = {node.step.b}, case {node.step.case}"
        boxes.append((cx, y, label))
        edges.append((cx, y, cx, cy, f"t = {node.step.t}"))
        return cx, y
    spots = [_layout(child, depth + 1, counter, boxes, edges) for child in node.children]
    x = sum(cx for cx, _ in spots) / len(spots)
    boxes.append((x, y, f"(+)\ntotal = {node.total}"))
    for cx, cy in spots:
        edges.append((x, y, cx, cy, ""))
    return x, y


def tree_figure(tree: DecompositionTree, path: str) -> None:
    """Draw the decomposition tree and save it to ``path``."""
    boxes: list[tuple[float, float, str]] = []
    edges: list[tuple[float, float, float, float, str]] = []
    counter = [0]
    _layout(tree.node, 0, counter, boxes, edges)

    width = max(4.0, 2.6 * counter[0])
    depth = max(-y for _, y, _ in boxes)
    height = max(3.0, 1.6 * (depth + 1))
    fig, ax = plt.subplots(figsize=(width, height))
    for x0, y0, x1, y1, label in edges:
        ax.plot([x0, x1], [y0, y1], color="#888", linewidth=1.2, zorder=1)
        if label:
            ax.text(
                (x0 + x1) / 2,
                (y0 + y1) / 2,
                "  " + label,
                fontsize=9,
                ha="left",
                va="center",
                color="#555",
            )
    for x, y, label in boxes:
        ax.text(
            x,
            y,
            label,
            ha="center",
            va="center",
            fontsize=9,
            family="monospace",
            zorder=2,
            bbox={
                "boxstyle": "round,pad=0.4",
                "facecolor": "#fdf6dd",
                "edgecolor": "#333",
            },
        )
    ax.set_title(
        f"{polynomial_text(tree.root)}"
        f"\n{tree.total_exceptionals} exceptional objects",
        family="monospace",
    )
    ax.set_xlim(-0.8, max(counter[0] - 0.2, 0.8))
    ax.set_ylim(-depth - 0.6, 0.6)
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def enumeration_figure(records: list[VerificationRecord], path: str) -> None:
    """Stacked per-check bar chart of pass/fail/skipped counts."""
    checks: list[str] = []
    counts: dict[str, dict[str, int]] = {}
    for record in records:
        if record.check not in counts:
            checks.append(record.check)
            counts[record.check] = {"pass": 0, "fail": 0, "skipped": 0}
        if record.status == "pass":
            counts[record.check]["pass"] += 1
        elif record.status == "fail":
            counts[record.check]["fail"] += 1
        else:
            counts[record.check]["skipped"] += 1

    fig, ax = plt.subplots(figsize=(max(4.0, 1.4 * len(checks) + 2), 4.0))
    xs = range(len(checks))
    bottoms = [0] * len(checks)
    for status, color in _STATUS_COLORS:
        heights = [counts[c][status] for c in checks]
        ax.bar(xs, heights, bottom=bottoms, color=color, label=status, width=0.6)
        bottoms = [b + h for b, h in zip(bottoms, heights)]
    ax.set_xticks(list(xs))
    ax.set_xticklabels(checks, rotation=20, ha="right")
    ax.set_ylabel("cases")
    ax.set_title(f"{len(records)} verification records")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
