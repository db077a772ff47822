"""Left-leaning red-black trees with the recursive insert and top-down delete.

This variant is the measured baseline, so the recursion is kept as is.  The
fix-up checks run at every level on the way back up, even after the tree is
already valid, and a delete restructures the search path whether or not the
key is present.

Two guards were added for absent keys.  The unguarded descent either walks
into nil or flips a leaf black and unbalances the tree.  A search that runs
out of children stops and re-balances locally instead.
"""

from __future__ import annotations

from typing import Any

from .core import BLACK, NIL, RED, Tree, Variant


class LLRBTree(Tree):
    variant = Variant.LLRB

    # any red right link is rotated during insert, so a fresh 4-node bounces
    # left and back before its flip; True adds the black-left-link guard
    lean_check = False

    # -- primitives with LLRB coloring -------------------------------------

    def _rot_left(self, h: int) -> int:
        C = self.store.color
        x = self.rotate_left(h)
        C[x] = C[h]
        C[h] = RED
        self.stats.recolors += 2
        if self.trace is not None:
            self.trace.append(f"rotate-left {self.store.key[h]}")
        return x

    def _rot_right(self, h: int) -> int:
        C = self.store.color
        x = self.rotate_right(h)
        C[x] = C[h]
        C[h] = RED
        self.stats.recolors += 2
        if self.trace is not None:
            self.trace.append(f"rotate-right {self.store.key[h]}")
        return x

    def _flip(self, h: int) -> None:
        s = self.store
        C = s.color
        C[h] ^= 1
        C[s.left[h]] ^= 1
        C[s.right[h]] ^= 1
        C[NIL] = BLACK
        self.stats.recolors += 3
        if self.trace is not None:
            self.trace.append(f"flip {s.key[h]}")

    def _fix_up(self, h: int) -> int:
        s = self.store
        C, L, R = s.color, s.left, s.right
        fired = False
        if C[R[h]] == RED:
            h = self._rot_left(h)
            fired = True
        if C[L[h]] == RED and C[L[L[h]]] == RED:
            h = self._rot_right(h)
            fired = True
        if C[L[h]] == RED and C[R[h]] == RED:
            self._flip(h)
            fired = True
        if fired:
            self.stats.fixup_steps += 1
        return h

    def _move_red_left(self, h: int) -> int:
        s = self.store
        C, L, R = s.color, s.left, s.right
        self._flip(h)
        if C[L[R[h]]] == RED:
            self._rot_right(R[h])
            h = self._rot_left(h)
            self._flip(h)
        self.stats.fixup_steps += 1
        return h

    def _move_red_right(self, h: int) -> int:
        s = self.store
        C, L = s.color, s.left
        self._flip(h)
        if C[L[L[h]]] == RED:
            h = self._rot_right(h)
            self._flip(h)
        self.stats.fixup_steps += 1
        return h

    # -- insert --------------------------------------------------------------

    def insert(self, key: Any) -> bool:
        s = self.store
        K, C, L, R = s.key, s.color, s.left, s.right
        lean_check = self.lean_check
        inserted = False

        def ins(h: int, parent: int) -> int:
            nonlocal inserted
            if h == NIL:
                inserted = True
                return s.alloc(key, RED, parent)
            k = K[h]
            if key < k:
                L[h] = ins(L[h], h)
            elif k < key:
                R[h] = ins(R[h], h)
            else:
                return h
            fired = False
            if C[R[h]] == RED and (not lean_check or C[L[h]] == BLACK):
                h = self._rot_left(h)
                fired = True
            if C[L[h]] == RED and C[L[L[h]]] == RED:
                h = self._rot_right(h)
                fired = True
            if C[L[h]] == RED and C[R[h]] == RED:
                self._flip(h)
                fired = True
            if fired:
                self.stats.fixup_steps += 1
            return h

        self.root = ins(self.root, NIL)
        C[self.root] = BLACK
        if inserted:
            self.size += 1
        return inserted

    # -- delete --------------------------------------------------------------

    def _delete_min(self, h: int) -> int:
        s = self.store
        C, L = s.color, s.left
        if L[h] == NIL:
            assert s.right[h] == NIL, "left-leaning minimum has a right child"
            s.free(h)
            return NIL
        if C[L[h]] == BLACK and C[L[L[h]]] == BLACK:
            h = self._move_red_left(h)
        L[h] = self._delete_min(L[h])
        return self._fix_up(h)

    def delete(self, key: Any) -> bool:
        s = self.store
        K, C, L, R = s.key, s.color, s.left, s.right
        removed = False

        def dele(h: int) -> int:
            nonlocal removed
            if key < K[h]:
                if L[h] == NIL:
                    return self._fix_up(h)
                if C[L[h]] == BLACK and C[L[L[h]]] == BLACK:
                    h = self._move_red_left(h)
                L[h] = dele(L[h])
            else:
                if C[L[h]] == RED:
                    h = self._rot_right(h)
                if R[h] == NIL:
                    if K[h] < key or key < K[h]:
                        return self._fix_up(h)
                    removed = True
                    s.free(h)
                    return NIL
                if C[R[h]] == BLACK and C[L[R[h]]] == BLACK:
                    h = self._move_red_right(h)
                if not (K[h] < key or key < K[h]):
                    m = R[h]
                    while L[m] != NIL:
                        m = L[m]
                    K[h] = K[m]
                    R[h] = self._delete_min(R[h])
                    removed = True
                else:
                    R[h] = dele(R[h])
            return self._fix_up(h)

        if self.root == NIL:
            return False
        self.root = dele(self.root)
        if self.root != NIL:
            s.parent[self.root] = NIL
            C[self.root] = BLACK
        C[NIL] = BLACK
        if removed:
            self.size -= 1
        return removed
