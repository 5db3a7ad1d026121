"""Invertible polynomials: classification, Milnor numbers, symmetry, cleaves."""

__version__ = "0.1.0"

from .cleave import (
    CleaveStep,
    DecompositionTree,
    GorensteinReport,
    augment,
    cleave_step,
    decompose,
    gorenstein_reduce,
    tree_dot,
)
from .core import (
    Atom,
    Classification,
    ExponentMatrix,
    WeightSystem,
    classify,
    parse_polynomial,
    polynomial_text,
    thom_sebastiani,
    transpose,
    weight_system,
)
from .harness import (
    EnumerationSpec,
    VerificationRecord,
    run_enumeration,
    summarize,
)
from .milnor import (
    Limits,
    MilnorReport,
    milnor_brute,
    milnor_closed,
    milnor_of_transpose,
)
from .symmetry import (
    BlockCount,
    GroupStructure,
    VgitData,
    exceptional_block_count,
    gamma_structure,
    vgit_lambda,
)

__all__ = [
    "Atom",
    "BlockCount",
    "Classification",
    "CleaveStep",
    "DecompositionTree",
    "EnumerationSpec",
    "ExponentMatrix",
    "GorensteinReport",
    "GroupStructure",
    "Limits",
    "MilnorReport",
    "VerificationRecord",
    "VgitData",
    "WeightSystem",
    "augment",
    "classify",
    "cleave_step",
    "decompose",
    "exceptional_block_count",
    "gamma_structure",
    "gorenstein_reduce",
    "milnor_brute",
    "milnor_closed",
    "milnor_of_transpose",
    "parse_polynomial",
    "polynomial_text",
    "run_enumeration",
    "summarize",
    "thom_sebastiani",
    "transpose",
    "tree_dot",
    "vgit_lambda",
    "weight_system",
]
