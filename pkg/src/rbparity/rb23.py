"""2-3 red-black trees: no node may have two red children.

Insert fix-up, with ``x`` the red node under repair:

* Case I, ``x`` and its parent red: the grandparent holds a 3-node that just
  received a third key.  An inner ``x`` is rotated to the outside, the
  grandparent is rotated so the middle key sits on top with two red
  children, and that temporary 4-node is split by a color flip.  The middle
  key stays red and becomes the new ``x``.
* Case II, ``x`` and its sibling red: color flip, the parent becomes ``x``.
* Otherwise (``x`` black, or red with black parent and sibling) stop.

The sentinel acts as the root's permanently black parent, so the loop
always terminates; the root is blackened afterwards.

Parity-seeking delete, with ``x`` the root of the deficient subtree (one
black node short of its sibling ``y``) and ``p`` their parent:

* Case I, ``x`` red: blacken it, done.
* Case II, ``x`` and ``y`` black:

  - both children of ``y`` black: redden ``y`` so both sides are equally
    short, and move the deficiency up to ``p``;
  - a child of ``y`` is red: reddening ``y`` leaves a vertical red pair.  A
    near red child is first lifted above ``y`` so the pair points away
    from ``x``; rotating ``p`` toward ``x`` then turns the pair into two red
    children of the new subtree root, which takes ``p``'s old color.
    Blackening both children adds the missing black node on ``x``'s side
    and the deficiency is gone.

* Case III, ``x`` black and ``y`` red: rotate ``p`` toward ``x``.  ``y``
  takes ``p``'s color and ``p`` turns red, so ``x`` now has a black sibling
  and Case II applies.
"""

from __future__ import annotations

from .core import BLACK, NIL, RED, Tree, Variant


class DeficiencyError(AssertionError):
    """The deficient-subtree invariant failed during a debug-mode delete."""


class RB23Tree(Tree):
    variant = Variant.RB23

    def _fix_insert(self, x: int) -> None:
        s = self.store
        C, L, R, P = s.color, s.left, s.right, s.parent
        stats = self.stats
        while C[x] == RED:
            p = P[x]
            if C[p] == RED:
                g = P[p]
                if p == L[g]:
                    if x == R[p]:
                        self._rule("I-inner")
                        self.rotate_left(p)
                        x, p = p, x
                    self._rule("I-outer")
                    self.rotate_right(g)
                else:
                    if x == L[p]:
                        self._rule("I-inner")
                        self.rotate_right(p)
                        x, p = p, x
                    self._rule("I-outer")
                    self.rotate_left(g)
                # p now sits above x and g; split the 4-node, keeping p red
                C[x] = BLACK
                C[g] = BLACK
                stats.recolors += 2
                x = p
                continue
            if p == NIL:
                break
            y = R[p] if x == L[p] else L[p]
            if C[y] != RED:
                break
            self._rule("II-flip")
            C[x] = C[y] = BLACK
            C[p] = RED
            stats.recolors += 3
            x = p

    # -- delete ------------------------------------------------------------

    def _fix_deficiency(self, p: int, x_is_left: bool) -> None:
        s = self.store
        C, L, R, P = s.color, s.left, s.right, s.parent
        stats = self.stats
        x = NIL
        while True:
            if self.debug:
                self._check_deficiency(x, p, x_is_left)
            if C[x] == RED:
                self._rule("I")
                C[x] = BLACK
                stats.recolors += 1
                return
            if p == NIL:
                # the whole tree is one black level shorter; nothing to fix
                return
            if x_is_left:
                y = R[p]
                near, far = L[y], R[y]
            else:
                y = L[p]
                near, far = R[y], L[y]
            if C[y] == RED:
                self._rule("III")
                C[y] = C[p]
                C[p] = RED
                stats.recolors += 2
                if x_is_left:
                    self.rotate_left(p)
                else:
                    self.rotate_right(p)
                continue
            if C[near] == BLACK and C[far] == BLACK:
                self._rule("II-b")
                C[y] = RED
                stats.recolors += 1
                x = p
                p = P[x]
                x_is_left = L[p] == x
                continue
            if C[near] == RED and C[far] == RED:
                if self._two_red_children(y, near, far):
                    continue
            self._resolve_red_nephew(p, y, near, far, x_is_left)
            return

    def _two_red_children(self, y: int, near: int, far: int) -> bool:
        raise AssertionError("2-3 RB sibling cannot have two red children")

    def _resolve_red_nephew(self, p: int, y: int, near: int, far: int, x_is_left: bool) -> None:
        C = self.store.color
        stats = self.stats
        C[y] = RED
        stats.recolors += 1
        if C[far] == RED:
            self._rule("II-d")
        else:
            # near child is red: lift it above y so the red pair points away
            self._rule("II-c")
            if x_is_left:
                self.rotate_right(y)
            else:
                self.rotate_left(y)
            far, y = y, near
        top_color = C[p]
        if x_is_left:
            self.rotate_left(p)
        else:
            self.rotate_right(p)
        # y is on top with red children p and far; blacken both
        C[y] = top_color
        C[p] = BLACK
        C[far] = BLACK
        stats.recolors += 3

    def _check_deficiency(self, x: int, p: int, x_is_left: bool) -> None:
        """Assert ``x`` is a valid subtree one black level short of its sibling."""
        if p == NIL:
            return
        s = self.store
        C, L, R = s.color, s.left, s.right

        def bh(h: int, top: bool) -> int:
            if h == NIL:
                return 0
            if not top and C[h] == RED and (C[L[h]] == RED or C[R[h]] == RED):
                raise DeficiencyError(f"red-red below deficient root at {s.key[h]!r}")
            a, b = bh(L[h], False), bh(R[h], False)
            if a != b:
                raise DeficiencyError(f"unequal black heights under {s.key[h]!r}")
            return a + (C[h] == BLACK)

        y = R[p] if x_is_left else L[p]
        if (L[p] == x) != x_is_left and x != NIL:
            raise DeficiencyError("cursor side flag is stale")
        hx, hy = bh(x, True), bh(y, True)
        if hx + 1 != hy:
            raise DeficiencyError(f"deficient side has {hx} black levels, sibling {hy}")
