"""Red-black tree variants with instrumented fix-ups.

Four variants share one node arena and rotation code:

* :class:`RBTree`: textbook insert and delete.
* :class:`LLRBTree`: left-leaning, recursive insert, top-down delete.
* :class:`RB23Tree`: no node with two red children, parity-seeking delete.
* :class:`RB234Tree`: textbook insert, parity-seeking delete.
"""

from .core import BLACK, NIL, RED, Color, NodeStore, OpStats, Tree, Variant, Violation, build
from .llrb import LLRBTree
from .rb import RBTree
from .rb23 import DeficiencyError, RB23Tree
from .rb234 import RB234Tree

VARIANTS: dict[Variant, type[Tree]] = {
    Variant.RB: RBTree,
    Variant.LLRB: LLRBTree,
    Variant.RB23: RB23Tree,
    Variant.RB234: RB234Tree,
}


def tree_class(variant: "Variant | str") -> type[Tree]:
    return VARIANTS[Variant(variant)]


__all__ = [
    "BLACK",
    "NIL",
    "RED",
    "Color",
    "DeficiencyError",
    "LLRBTree",
    "NodeStore",
    "OpStats",
    "RB234Tree",
    "RB23Tree",
    "RBTree",
    "Tree",
    "VARIANTS",
    "Variant",
    "Violation",
    "build",
    "tree_class",
]
