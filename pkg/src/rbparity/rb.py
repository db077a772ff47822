"""Classic bottom-up red-black tree with parent links and a nil sentinel."""

from __future__ import annotations

from .core import BLACK, NIL, RED, Tree, Variant


def rb_fix_insert(t: Tree, x: int) -> None:
    """Repair a red-red violation at the freshly inserted red node ``x``.

    Red uncle: push blackness down from the grandparent and continue there.
    Black uncle: an inner ``x`` is first rotated to the outside, then the
    grandparent is rotated and the loop ends.
    """
    s = t.store
    C, L, R, P = s.color, s.left, s.right, s.parent
    while C[P[x]] == RED:
        p = P[x]
        g = P[p]
        if p == L[g]:
            u = R[g]
            if C[u] == RED:
                t._rule("insert-red-uncle")
                C[p] = C[u] = BLACK
                C[g] = RED
                t.stats.recolors += 3
                x = g
                continue
            if x == R[p]:
                t._rule("insert-inner")
                t.rotate_left(p)
                x, p = p, x
            t._rule("insert-outer")
            C[p] = BLACK
            C[g] = RED
            t.stats.recolors += 2
            t.rotate_right(g)
        else:
            u = L[g]
            if C[u] == RED:
                t._rule("insert-red-uncle")
                C[p] = C[u] = BLACK
                C[g] = RED
                t.stats.recolors += 3
                x = g
                continue
            if x == L[p]:
                t._rule("insert-inner")
                t.rotate_right(p)
                x, p = p, x
            t._rule("insert-outer")
            C[p] = BLACK
            C[g] = RED
            t.stats.recolors += 2
            t.rotate_left(g)


class RBTree(Tree):
    """Red-black tree with the textbook insert and delete fix-ups.

    Delete rules, with ``x`` the root of the deficient subtree, ``w`` its
    sibling and ``p`` their parent (the mirrored rules swap left/right):

    a. ``x`` red: blacken it, done.
    b. ``w`` red: recolor, rotate ``p`` toward ``x`` so ``x`` gets a black sibling.
    c. ``w`` black with two black children: redden ``w``, move up to ``p``.
    d. ``w`` black, far child black, near child red: rotate ``w`` away from ``x``.
    e. ``w`` black, far child red: rotate ``p`` toward ``x``, recolor, done.
    """

    variant = Variant.RB

    def _fix_insert(self, x: int) -> None:
        rb_fix_insert(self, x)

    def _fix_deficiency(self, p: int, x_is_left: bool) -> None:
        s = self.store
        C, L, R, P = s.color, s.left, s.right, s.parent
        stats = self.stats
        x = NIL
        while x != self.root and C[x] == BLACK:
            if x_is_left:
                w = R[p]
                if C[w] == RED:
                    self._rule("b")
                    C[w] = BLACK
                    C[p] = RED
                    stats.recolors += 2
                    self.rotate_left(p)
                    w = R[p]
                if C[L[w]] == BLACK and C[R[w]] == BLACK:
                    self._rule("c")
                    C[w] = RED
                    stats.recolors += 1
                    x = p
                    p = P[x]
                    x_is_left = L[p] == x
                    continue
                if C[R[w]] == BLACK:
                    self._rule("d")
                    C[L[w]] = BLACK
                    C[w] = RED
                    stats.recolors += 2
                    self.rotate_right(w)
                    w = R[p]
                self._rule("e")
                C[w] = C[p]
                C[p] = BLACK
                C[R[w]] = BLACK
                stats.recolors += 3
                self.rotate_left(p)
                x = self.root
            else:
                w = L[p]
                if C[w] == RED:
                    self._rule("b")
                    C[w] = BLACK
                    C[p] = RED
                    stats.recolors += 2
                    self.rotate_right(p)
                    w = L[p]
                if C[L[w]] == BLACK and C[R[w]] == BLACK:
                    self._rule("c")
                    C[w] = RED
                    stats.recolors += 1
                    x = p
                    p = P[x]
                    x_is_left = L[p] == x
                    continue
                if C[L[w]] == BLACK:
                    self._rule("d")
                    C[R[w]] = BLACK
                    C[w] = RED
                    stats.recolors += 2
                    self.rotate_left(w)
                    w = L[p]
                self._rule("e")
                C[w] = C[p]
                C[p] = BLACK
                C[L[w]] = BLACK
                stats.recolors += 3
                self.rotate_right(p)
                x = self.root
        if x != NIL and C[x] == RED:
            self._rule("a")
            C[x] = BLACK
            stats.recolors += 1
