"""2-3-4 red-black trees: classic insert, parity-seeking delete.

The delete loop is the 2-3 one plus one extra rule for a black sibling ``y``
with two red children (a full 4-node).  The rule splits that 4-node with a
color flip, which leaves ``y`` red; the ordinary loop then continues with a
Case III rotation, a Case II recolor that lifts the deficiency onto the
now-red old parent, and a Case I blacken.  Each step runs separately.  The
net effect is one rotation, with the same shape and colors that the
textbook delete produces.
"""

from __future__ import annotations

from .core import BLACK, RED, Variant
from .rb import rb_fix_insert
from .rb23 import RB23Tree


class RB234Tree(RB23Tree):
    variant = Variant.RB234

    def _fix_insert(self, x: int) -> None:
        rb_fix_insert(self, x)

    def _two_red_children(self, y: int, near: int, far: int) -> bool:
        C = self.store.color
        self._rule("split-4-node")
        C[y] = RED
        C[near] = BLACK
        C[far] = BLACK
        self.stats.recolors += 3
        return True
