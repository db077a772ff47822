"""Differential testing against a sorted-list oracle.

Scripts are plain sequences of ``("I" | "D" | "S", key)`` operations with the
seed that generated them, serialized one op per line::

    SEED 42
    I 17
    D 17
    S 3

Random streams come from numpy's PCG64 so that a seed regenerates the same
script everywhere.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import VARIANTS, Variant, tree_class
from .core import Tree
from .rb import RBTree
from .rb23 import RB23Tree
from .rb234 import RB234Tree

GENERATOR = "numpy.random.PCG64"

Op = tuple[str, int]
Hook = Callable[[int, Op, Tree], None]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass
class OpScript:
    seed: int
    ops: list[Op] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.ops)

    def dumps(self) -> str:
        lines = [f"SEED {self.seed}"]
        lines.extend(f"{kind} {key}" for kind, key in self.ops)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "OpScript":
        seed = 0
        ops: list[Op] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected '<op> <int>', got {raw!r}")
            kind, arg = parts
            kind = kind.upper()
            if kind == "SEED":
                seed = int(arg)
                if not 0 <= seed < 2**64:
                    raise ValueError(f"line {lineno}: seed out of u64 range")
            elif kind in ("I", "D", "S"):
                ops.append((kind, int(arg)))
            else:
                raise ValueError(f"line {lineno}: unknown op {kind!r}")
        return cls(seed, ops)

    def save(self, path: "str | Path") -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path: "str | Path") -> "OpScript":
        return cls.loads(Path(path).read_text())


def generate_script(
    seed: int,
    n_ops: int,
    universe: int = 1 << 20,
    mode: str = "fuzz",
) -> OpScript:
    """Build a replayable random script.

    ``fuzz`` mixes inserts, deletes and searches over ``[0, universe)`` with
    duplicates allowed; half of the deletes and searches target a key known to
    be present so the tree neither starves nor only grows.  ``distinct``
    inserts ``n_ops // 2`` distinct keys and then deletes all of them in an
    independent random order.
    """
    rng = make_rng(seed)
    ops: list[Op] = []
    if mode == "distinct":
        half = n_ops // 2
        if half > universe:
            raise ValueError("universe too small for that many distinct keys")
        keys = rng.choice(universe, size=half, replace=False).tolist()
        ops.extend(("I", k) for k in keys)
        ops.extend(("D", k) for k in rng.permutation(keys).tolist())
        return OpScript(seed, ops)
    if mode != "fuzz":
        raise ValueError(f"unknown mode {mode!r}")
    present: list[int] = []
    members: set[int] = set()
    kinds = rng.choice(3, size=n_ops, p=[0.45, 0.4, 0.15]).tolist()
    coins = rng.random(n_ops).tolist()
    fresh = rng.integers(0, universe, size=n_ops).tolist()
    picks = rng.random(n_ops).tolist()
    for i in range(n_ops):
        kind = "IDS"[kinds[i]]
        if kind != "I" and present and coins[i] < 0.5:
            key = present[int(picks[i] * len(present))]
        else:
            key = fresh[i]
        ops.append((kind, key))
        if kind == "I" and key not in members:
            members.add(key)
            present.append(key)
        elif kind == "D" and key in members:
            members.discard(key)
            j = present.index(key)
            present[j] = present[-1]
            present.pop()
    return OpScript(seed, ops)


class OracleSet:
    """Sorted-list set; linear-time updates, trusted by inspection."""

    def __init__(self) -> None:
        self.contents: list[int] = []

    def __len__(self) -> int:
        return len(self.contents)

    def __contains__(self, key: int) -> bool:
        i = bisect.bisect_left(self.contents, key)
        return i < len(self.contents) and self.contents[i] == key

    def insert(self, key: int) -> bool:
        i = bisect.bisect_left(self.contents, key)
        if i < len(self.contents) and self.contents[i] == key:
            return False
        self.contents.insert(i, key)
        return True

    def delete(self, key: int) -> bool:
        i = bisect.bisect_left(self.contents, key)
        if i < len(self.contents) and self.contents[i] == key:
            del self.contents[i]
            return True
        return False

    def search(self, key: int) -> bool:
        return key in self


@dataclass
class Divergence:
    op_index: int
    variant: Variant
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"op {self.op_index} [{self.variant.value}] {self.kind}: {self.detail}"


@dataclass
class DifferentialReport:
    variants: tuple[Variant, ...]
    ops_run: int
    divergence: Optional[Divergence] = None
    reproduction: Optional[OpScript] = None
    max_step_ratio: float = 0.0
    generator: str = GENERATOR

    @property
    def clean(self) -> bool:
        return self.divergence is None

    def summary(self) -> str:
        names = ",".join(v.value for v in self.variants)
        if self.clean:
            return (
                f"clean: {self.ops_run} ops x [{names}], "
                f"max fixup steps/height {self.max_step_ratio:.2f} ({self.generator})"
            )
        extra = f", shrunk to {len(self.reproduction)} ops" if self.reproduction else ""
        return f"DIVERGENCE {self.divergence}{extra} ({self.generator})"


def _as_variants(variants: Optional[Iterable["Variant | str"]]) -> tuple[Variant, ...]:
    if variants is None:
        return tuple(VARIANTS)
    return tuple(Variant(v) for v in variants)


def _first_divergence(
    script: OpScript,
    variant: Variant,
    *,
    check_bounds: bool,
    hook: Optional[Hook],
    stats: Optional[list[float]] = None,
) -> Optional[Divergence]:
    tree = tree_class(variant)()
    tree.debug = True
    oracle = OracleSet()
    height = 0
    worst = 0.0
    try:
        for i, op in enumerate(script.ops):
            kind, key = op
            steps0 = tree.stats.fixup_steps
            if kind == "I":
                got, want = tree.insert(key), oracle.insert(key)
            elif kind == "D":
                got, want = tree.delete(key), oracle.delete(key)
            else:
                got, want = tree.search(key), oracle.search(key)
            if hook is not None:
                hook(i, op, tree)
            if got != want:
                return Divergence(i, variant, "result", f"{kind} {key} returned {got}, oracle {want}")
            violations, keys, new_height = tree.audit()
            if violations:
                v = violations[0]
                return Divergence(i, variant, f"invariant-{v.rule}", v.detail)
            if keys != oracle.contents:
                return Divergence(i, variant, "contents", f"after {kind} {key}")
            if check_bounds:
                bound = max(height, new_height)
                steps = tree.stats.fixup_steps - steps0
                if steps > 2 * bound:
                    return Divergence(
                        i, variant, "fixup-bound", f"{steps} steps at height {bound}"
                    )
                if bound:
                    worst = max(worst, steps / bound)
                height = new_height
    except AssertionError as exc:  # includes DeficiencyError
        return Divergence(i, variant, "assertion", str(exc) or type(exc).__name__)
    if stats is not None:
        stats.append(worst)
    return None


def shrink(script: OpScript, still_fails: Callable[[OpScript], bool]) -> OpScript:
    """Greedily drop chunks, then single ops, while ``still_fails`` holds."""
    ops = list(script.ops)
    chunk = max(1, len(ops) // 2)
    while chunk >= 1:
        i = 0
        progressed = False
        while i < len(ops):
            trial = ops[:i] + ops[i + chunk :]
            if trial != ops and still_fails(OpScript(script.seed, trial)):
                ops = trial
                progressed = True
            else:
                i += chunk
        if not progressed:
            chunk //= 2
    return OpScript(script.seed, ops)


def differential_run(
    script: OpScript,
    variants: Optional[Iterable["Variant | str"]] = None,
    *,
    check_bounds: bool = True,
    hook: Optional[Hook] = None,
    minimize: bool = True,
) -> DifferentialReport:
    """Replay ``script`` on every variant and the oracle, checking after each op.

    Each op's return value, the in-order contents, ``validate()`` and the
    per-op fix-up step bound (at most twice the tree height) are checked.
    The first failure is reported with a reproduction script shrunk by op
    removal.  ``hook(i, op, tree)`` runs after every op and may corrupt the
    tree to test the harness itself.
    """
    chosen = _as_variants(variants)
    ratios: list[float] = []
    for variant in chosen:
        div = _first_divergence(script, variant, check_bounds=check_bounds, hook=hook, stats=ratios)
        if div is None:
            continue
        repro = None
        if minimize:
            prefix = OpScript(script.seed, script.ops[: div.op_index + 1])

            def still_fails(s: OpScript) -> bool:
                d = _first_divergence(s, variant, check_bounds=check_bounds, hook=hook)
                return d is not None and d.kind == div.kind

            repro = shrink(prefix, still_fails)
        return DifferentialReport(chosen, len(script.ops), div, repro)
    return DifferentialReport(chosen, len(script.ops), max_step_ratio=max(ratios, default=0.0))


# -- rotation parity --------------------------------------------------------


@dataclass
class ParityMismatch:
    stage: str
    index: int
    key: int
    left: int
    right: int
    dots: tuple[str, str]

    def __str__(self) -> str:
        return f"{self.stage} #{self.index} key {self.key}: rotations {self.left} vs {self.right}"


@dataclass
class ParityReport:
    n: int
    seed: int
    insert_rotations: tuple[int, int] = (0, 0)
    delete_rotations: tuple[int, int] = (0, 0)
    shapes_equal: bool = True
    clone_trials: int = 0
    mismatches: list[ParityMismatch] = field(default_factory=list)
    generator: str = GENERATOR

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.shapes_equal


def paired_rb_rb234(keys: Sequence[int], order: Sequence[int], report: ParityReport) -> None:
    """Run the same insert/delete schedule on RB and 2-3-4 RB in lockstep."""
    a, b = RBTree(), RB234Tree()
    for stage, seq in (("insert", keys), ("delete", order)):
        start = (a.stats.rotations, b.stats.rotations)
        for i, k in enumerate(seq):
            ra, rb = a.stats.rotations, b.stats.rotations
            if stage == "insert":
                a.insert(k)
                b.insert(k)
            else:
                a.delete(k)
                b.delete(k)
            da, db = a.stats.rotations - ra, b.stats.rotations - rb
            if da != db:
                report.mismatches.append(ParityMismatch(stage, i, k, da, db, (a.to_dot(), b.to_dot())))
                return
        totals = (a.stats.rotations - start[0], b.stats.rotations - start[1])
        if stage == "insert":
            report.insert_rotations = totals
            if a.shape() != b.shape():
                report.shapes_equal = False
        else:
            report.delete_rotations = totals
    if a.shape() != b.shape():
        report.shapes_equal = False


def clone_delete_trial(keys: Sequence[int], victim: int) -> tuple[int, int, RB23Tree]:
    """Delete ``victim`` from one 2-3 RB tree with both delete algorithms.

    Returns the textbook and parity-seeking rotation counts and the source tree.
    """
    base = RB23Tree(keys)
    classic = base.clone(RBTree)
    parity = base.clone(RB23Tree)
    classic.delete(victim)
    parity.delete(victim)
    return classic.stats.rotations, parity.stats.rotations, base


def rotation_parity_check(
    n: int,
    seed: int,
    *,
    clone_trials: int = 0,
    clone_size: int = 1000,
) -> ParityReport:
    """Check rotation identities between delete algorithms.

    (a) RB and 2-3-4 RB run the same ``n`` inserts then ``n`` deletes; every
    per-op and cumulative rotation count and the final shapes must agree.
    (b) ``clone_trials`` times, a 2-3 RB tree of ``clone_size`` keys is copied
    and one random key is deleted from each copy with the textbook and
    parity-seeking deletes; their rotation counts must agree.
    """
    rng = make_rng(seed)
    report = ParityReport(n, seed, clone_trials=clone_trials)
    keys = rng.choice(1 << 62, size=n, replace=False).tolist()
    order = rng.permutation(keys).tolist()
    paired_rb_rb234(keys, order, report)
    for trial in range(clone_trials):
        tkeys = rng.choice(1 << 62, size=clone_size, replace=False).tolist()
        victim = tkeys[int(rng.integers(clone_size))]
        ra, rb, base = clone_delete_trial(tkeys, victim)
        if ra != rb:
            a, b = base.clone(RBTree), base.clone(RB23Tree)
            a.delete(victim)
            b.delete(victim)
            report.mismatches.append(
                ParityMismatch("clone-delete", trial, victim, ra, rb, (a.to_dot(), b.to_dot()))
            )
    return report
