"""Shared node arena, rotations, traversal and structural validation.

Every tree variant stores its nodes in a :class:`NodeStore`: parallel lists
indexed by integer handles, with handle ``0`` reserved for the nil sentinel.
The sentinel is black, its children point back at itself, and it is never
handed out by :meth:`NodeStore.alloc`.

Rotations are color-neutral.  They relink nodes, keep parent pointers
consistent, bump ``stats.rotations`` and leave every recoloring decision to
the variant that called them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, ClassVar, Iterator, NamedTuple, Optional

NIL = 0
BLACK = 0
RED = 1


class Color(enum.IntEnum):
    BLACK = BLACK
    RED = RED


class Variant(str, enum.Enum):
    RB = "rb"
    LLRB = "llrb"
    RB23 = "rb23"
    RB234 = "rb234"


@dataclass
class OpStats:
    """Cumulative instrumentation counters of one tree."""

    rotations: int = 0
    recolors: int = 0
    fixup_steps: int = 0

    def snapshot(self) -> tuple[int, int, int]:
        return (self.rotations, self.recolors, self.fixup_steps)


class NodeStore:
    """Arena of tree nodes addressed by integer handles.

    Freed handles go to a free list and are reused by later allocations.
    """

    __slots__ = ("key", "color", "left", "right", "parent", "_free")

    def __init__(self) -> None:
        self.key: list[Any] = [None]
        self.color: list[int] = [BLACK]
        self.left: list[int] = [NIL]
        self.right: list[int] = [NIL]
        self.parent: list[int] = [NIL]
        self._free: list[int] = []

    def alloc(self, key: Any, color: int = RED, parent: int = NIL) -> int:
        if self._free:
            h = self._free.pop()
            self.key[h] = key
            self.color[h] = color
            self.left[h] = NIL
            self.right[h] = NIL
            self.parent[h] = parent
            return h
        self.key.append(key)
        self.color.append(color)
        self.left.append(NIL)
        self.right.append(NIL)
        self.parent.append(parent)
        return len(self.key) - 1

    def free(self, h: int) -> None:
        assert h != NIL, "cannot free the nil sentinel"
        self.key[h] = None
        self.left[h] = self.right[h] = self.parent[h] = NIL
        self._free.append(h)

    def capacity(self) -> int:
        """Number of slots ever allocated (excluding nil)."""
        return len(self.key) - 1

    def live(self) -> int:
        return len(self.key) - 1 - len(self._free)

    def copy(self) -> "NodeStore":
        other = NodeStore.__new__(NodeStore)
        other.key = list(self.key)
        other.color = list(self.color)
        other.left = list(self.left)
        other.right = list(self.right)
        other.parent = list(self.parent)
        other._free = list(self._free)
        return other


class Violation(NamedTuple):
    """One structural defect found by :meth:`Tree.validate`.

    ``rule`` is one of:

    ``a``  BST order, ``b`` root black, ``c`` red node with red parent,
    ``d`` unequal black heights, ``e`` node with two red children (2-3 RB),
    ``f`` red right child (LLRB), ``links`` parent/child mismatch,
    ``nil`` sentinel corrupted, ``size`` size counter mismatch.
    """

    rule: str
    handle: int
    detail: str = ""


class Tree:
    """Base class of the four red-black variants.

    Subclasses supply ``_fix_insert`` (called with the freshly linked red node)
    and ``_fix_deficiency`` (called after a black leaf was unlinked); LLRB
    overrides ``insert`` and ``delete`` wholesale.
    """

    variant: ClassVar[Variant]

    def __init__(self, keys: Any = ()) -> None:
        self.store = NodeStore()
        self.root = NIL
        self.size = 0
        self.stats = OpStats()
        # when a list, every fix-up rule appends its name
        self.trace: Optional[list[str]] = None
        # when true, deficiency-tracking variants re-check their invariant
        # at every loop iteration
        self.debug = False
        for k in keys:
            self.insert(k)

    # -- public container protocol ---------------------------------------

    def __len__(self) -> int:
        return self.size

    def __contains__(self, key: Any) -> bool:
        return self.search(key)

    def __iter__(self) -> Iterator[Any]:
        return iter(self.inorder_keys())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.inorder_keys()!r})"

    def search(self, key: Any) -> bool:
        return self._find(key) != NIL

    def _find(self, key: Any) -> int:
        K, L, R = self.store.key, self.store.left, self.store.right
        h = self.root
        while h != NIL:
            k = K[h]
            if key < k:
                h = L[h]
            elif k < key:
                h = R[h]
            else:
                return h
        return NIL

    def inorder_keys(self) -> list[Any]:
        K, L, R = self.store.key, self.store.left, self.store.right
        out: list[Any] = []
        stack: list[int] = []
        h = self.root
        while stack or h != NIL:
            while h != NIL:
                stack.append(h)
                h = L[h]
            h = stack.pop()
            out.append(K[h])
            h = R[h]
        return out

    def min_key(self) -> Any:
        if self.root == NIL:
            raise KeyError("empty tree")
        L = self.store.left
        h = self.root
        while L[h] != NIL:
            h = L[h]
        return self.store.key[h]

    def max_key(self) -> Any:
        if self.root == NIL:
            raise KeyError("empty tree")
        R = self.store.right
        h = self.root
        while R[h] != NIL:
            h = R[h]
        return self.store.key[h]

    def height(self) -> int:
        """Number of nodes on the longest root-to-leaf path (0 when empty)."""
        L, R = self.store.left, self.store.right
        best = 0
        stack = [(self.root, 1)] if self.root != NIL else []
        while stack:
            h, d = stack.pop()
            if d > best:
                best = d
            if L[h] != NIL:
                stack.append((L[h], d + 1))
            if R[h] != NIL:
                stack.append((R[h], d + 1))
        return best

    def black_height(self, h: Optional[int] = None) -> int:
        """Black nodes from ``h`` (inclusive) down its leftmost path."""
        C, L = self.store.color, self.store.left
        h = self.root if h is None else h
        n = 0
        while h != NIL:
            n += C[h] == BLACK
            h = L[h]
        return n

    # -- cloning and comparison ------------------------------------------

    def clone(self, cls: Optional[type["Tree"]] = None) -> "Tree":
        """Deep copy, optionally re-typed as another variant.

        Re-typing lets one variant's delete run on a tree another variant
        built; the caller is responsible for the tree satisfying the target
        variant's invariants.
        """
        cls = cls or type(self)
        other = cls.__new__(cls)
        other.store = self.store.copy()
        other.root = self.root
        other.size = self.size
        other.stats = OpStats()
        other.trace = None
        other.debug = self.debug
        return other

    def shape(self) -> Any:
        """Nested ``(key, color, left, right)`` tuples; ``None`` for nil."""
        K, C, L, R = self.store.key, self.store.color, self.store.left, self.store.right

        def walk(h: int) -> Any:
            if h == NIL:
                return None
            return (K[h], C[h], walk(L[h]), walk(R[h]))

        return walk(self.root)

    # -- rotations ---------------------------------------------------------

    def rotate_left(self, h: int) -> int:
        """Lift ``h.right`` above ``h``; return the new subtree root."""
        s = self.store
        L, R, P = s.left, s.right, s.parent
        x = R[h]
        assert h != NIL and x != NIL, "rotate_left needs a right child"
        b = L[x]
        R[h] = b
        if b != NIL:
            P[b] = h
        p = P[h]
        P[x] = p
        if p == NIL:
            self.root = x
        elif L[p] == h:
            L[p] = x
        else:
            R[p] = x
        L[x] = h
        P[h] = x
        self.stats.rotations += 1
        return x

    def rotate_right(self, h: int) -> int:
        """Lift ``h.left`` above ``h``; return the new subtree root."""
        s = self.store
        L, R, P = s.left, s.right, s.parent
        x = L[h]
        assert h != NIL and x != NIL, "rotate_right needs a left child"
        b = R[x]
        L[h] = b
        if b != NIL:
            P[b] = h
        p = P[h]
        P[x] = p
        if p == NIL:
            self.root = x
        elif L[p] == h:
            L[p] = x
        else:
            R[p] = x
        R[x] = h
        P[h] = x
        self.stats.rotations += 1
        return x

    # -- insert / delete templates -----------------------------------------

    def insert(self, key: Any) -> bool:
        """Add ``key``; return False (and change nothing) if already present."""
        s = self.store
        K, L, R = s.key, s.left, s.right
        p = NIL
        h = self.root
        go_left = False
        while h != NIL:
            p = h
            k = K[h]
            if key < k:
                h = L[h]
                go_left = True
            elif k < key:
                h = R[h]
                go_left = False
            else:
                return False
        z = s.alloc(key, RED, p)
        if p == NIL:
            self.root = z
        elif go_left:
            L[p] = z
        else:
            R[p] = z
        self.size += 1
        self._fix_insert(z)
        s.color[self.root] = BLACK
        return True

    def delete(self, key: Any) -> bool:
        """Remove ``key``; return False (and change nothing) if absent.

        The deletion is first moved to a leaf or degree-1 node via the in-order
        successor.  A degree-1 node is a black node whose only child is a red
        leaf, so the child's key is copied up and the child dropped.  A red
        leaf is dropped outright.  Dropping a black leaf leaves its position
        deficient and hands over to ``_fix_deficiency``.
        """
        z = self._find(key)
        if z == NIL:
            return False
        s = self.store
        K, C, L, R, P = s.key, s.color, s.left, s.right, s.parent
        if L[z] != NIL and R[z] != NIL:
            m = R[z]
            while L[m] != NIL:
                m = L[m]
            K[z] = K[m]
            z = m
        c = L[z] if L[z] != NIL else R[z]
        self.size -= 1
        if c != NIL:
            K[z] = K[c]
            if L[z] == c:
                L[z] = NIL
            else:
                R[z] = NIL
            s.free(c)
            return True
        p = P[z]
        black_leaf = C[z] == BLACK
        if p == NIL:
            self.root = NIL
            s.free(z)
            return True
        x_is_left = L[p] == z
        if x_is_left:
            L[p] = NIL
        else:
            R[p] = NIL
        s.free(z)
        if black_leaf:
            self._fix_deficiency(p, x_is_left)
            C[self.root] = BLACK
        C[NIL] = BLACK
        return True

    def _fix_insert(self, x: int) -> None:
        raise NotImplementedError

    def _fix_deficiency(self, p: int, x_is_left: bool) -> None:
        raise NotImplementedError

    def _rule(self, name: str) -> None:
        self.stats.fixup_steps += 1
        if self.trace is not None:
            self.trace.append(name)

    # -- validation --------------------------------------------------------

    def validate(self) -> list[Violation]:
        """Return every structural violation; empty list means a valid tree."""
        return self.audit()[0]

    def audit(self) -> tuple[list[Violation], list[Any], int]:
        """One walk giving ``(violations, in-order keys, height)``."""
        s = self.store
        K, C, L, R, P = s.key, s.color, s.left, s.right, s.parent
        out: list[Violation] = []
        keys: list[Any] = []
        if C[NIL] != BLACK:
            out.append(Violation("nil", NIL, "sentinel is not black"))
        if L[NIL] != NIL or R[NIL] != NIL:
            out.append(Violation("nil", NIL, "sentinel has children"))
        root = self.root
        if root == NIL:
            if self.size != 0:
                out.append(Violation("size", NIL, f"size={self.size} but tree empty"))
            return out, keys, 0
        if C[root] != BLACK:
            out.append(Violation("b", root, "root is red"))
        if P[root] != NIL:
            out.append(Violation("links", root, "root has a parent"))
        two_red = self.variant is Variant.RB23
        left_leaning = self.variant is Variant.LLRB
        budget = s.capacity()
        deepest = 0
        append = keys.append

        class Cycle(Exception):
            pass

        # returns the black height of h; keys are emitted in order
        def walk(h: int, depth: int) -> int:
            nonlocal budget, deepest
            budget -= 1
            if budget < 0:
                raise Cycle
            if depth > deepest:
                deepest = depth
            l, r = L[h], R[h]
            lb = 0
            if l != NIL:
                if P[l] != h:
                    out.append(Violation("links", l, f"parent of {K[l]!r} is not {K[h]!r}"))
                lb = walk(l, depth + 1)
            k = K[h]
            if keys and not keys[-1] < k:
                out.append(Violation("a", h, f"key {k!r} after {keys[-1]!r}"))
            append(k)
            rb = 0
            if r != NIL:
                if P[r] != h:
                    out.append(Violation("links", r, f"parent of {K[r]!r} is not {k!r}"))
                rb = walk(r, depth + 1)
            c = C[h]
            if c == RED:
                if C[l] == RED or C[r] == RED:
                    out.append(Violation("c", h, f"red {k!r} has a red child"))
            elif two_red and C[l] == RED and C[r] == RED:
                out.append(Violation("e", h, f"{k!r} has two red children"))
            if left_leaning and C[r] == RED:
                out.append(Violation("f", r, f"red right child {K[r]!r}"))
            if lb != rb:
                out.append(Violation("d", h, f"black heights {lb} vs {rb} under {k!r}"))
            return (lb if lb > rb else rb) + (c == BLACK)

        try:
            walk(root, 1)
        except (Cycle, RecursionError):
            out.append(Violation("links", root, "cycle detected"))
            return out, keys, deepest
        if len(keys) != self.size:
            out.append(Violation("size", root, f"size={self.size} but {len(keys)} nodes"))
        return out, keys, deepest

    def is_valid(self) -> bool:
        return not self.validate()

    # -- rendering ---------------------------------------------------------

    def to_dot(self, name: str = "rbtree") -> str:
        """Render the tree as Graphviz DOT text; nil is omitted."""
        s = self.store
        K, C, L, R = s.key, s.color, s.left, s.right
        lines = [f"digraph {name} {{", "  node [shape=circle, style=filled, fontcolor=white];"]
        stack = [self.root] if self.root != NIL else []
        while stack:
            h = stack.pop()
            color = "red" if C[h] == RED else "black"
            lines.append(f'  n{h} [label="{K[h]} [{color}]", fillcolor={color}];')
            for side, c in (("L", L[h]), ("R", R[h])):
                if c != NIL:
                    edge_color = "red" if C[c] == RED else "black"
                    lines.append(f'  n{h} -> n{c} [label="{side}", color={edge_color}];')
            if R[h] != NIL:
                stack.append(R[h])
            if L[h] != NIL:
                stack.append(L[h])
        lines.append("}")
        return "\n".join(lines) + "\n"


def build(cls: type[Tree], spec: Any) -> Tree:
    """Build a tree of class ``cls`` directly from a nested description.

    ``spec`` is ``None`` or ``(key, color, left, right)`` with ``color`` one of
    ``"R"``/``"B"`` (or :data:`RED`/:data:`BLACK`).  No balancing is applied,
    so the result may violate any invariant; this is meant for tests and
    hand-drawn fixtures.
    """
    t = cls()
    s = t.store

    def make(node: Any, parent: int) -> int:
        if node is None:
            return NIL
        key, color, left, right = node
        if isinstance(color, str):
            color = RED if color.upper().startswith("R") else BLACK
        h = s.alloc(key, color, parent)
        t.size += 1
        s.left[h] = make(left, h)
        s.right[h] = make(right, h)
        return h

    t.root = make(spec, NIL)
    return t
