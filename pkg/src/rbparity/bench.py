"""Rotation and timing experiments over random key sequences.

One trial draws ``n`` distinct random keys, inserts them all into a fresh
tree, then deletes them in an independent random order.  Every variant in a
trial sees the same two sequences, so paired variants can be compared
op-for-op.  Rotations are normalized by ``n * log_b(n)`` and multiplied by
1000; times (nanoseconds per phase) get the same normalization without the
factor.  With ``n == 1`` the normalizer is taken as 1.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import Variant, tree_class
from .verification import GENERATOR

LOG_BASES = {"2": 2.0, "e": math.e, "10": 10.0}
PHASES = ("insert", "delete")
CSV_HEADER = ("n", "reps", "variant", "phase", "rot_mean", "rot_sd", "time_mean", "time_sd")

# published means (x1000 / (n log n)), used for the residual report
REFERENCE_ROTATIONS: dict[int, dict[tuple[Variant, str], float]] = {
    1_000: {
        (Variant.RB, "insert"): 193, (Variant.LLRB, "insert"): 569,
        (Variant.RB23, "insert"): 275, (Variant.RB234, "insert"): 193,
        (Variant.RB, "delete"): 126, (Variant.LLRB, "delete"): 2539,
        (Variant.RB23, "delete"): 136, (Variant.RB234, "delete"): 126,
    },
    10_000: {
        (Variant.RB, "insert"): 146, (Variant.LLRB, "insert"): 430,
        (Variant.RB23, "insert"): 208, (Variant.RB234, "insert"): 146,
        (Variant.RB, "delete"): 95, (Variant.LLRB, "delete"): 2940,
        (Variant.RB23, "delete"): 103, (Variant.RB234, "delete"): 95,
    },
    100_000: {
        (Variant.RB, "insert"): 117, (Variant.LLRB, "insert"): 345,
        (Variant.RB23, "insert"): 167, (Variant.RB234, "insert"): 117,
        (Variant.RB, "delete"): 76, (Variant.LLRB, "delete"): 3178,
        (Variant.RB23, "delete"): 82, (Variant.RB234, "delete"): 76,
    },
    1_000_000: {
        (Variant.RB, "insert"): 97, (Variant.LLRB, "insert"): 287,
        (Variant.RB23, "insert"): 139, (Variant.RB234, "insert"): 97,
        (Variant.RB, "delete"): 63, (Variant.LLRB, "delete"): 3320,
        (Variant.RB23, "delete"): 68, (Variant.RB234, "delete"): 63,
    },
    10_000_000: {
        (Variant.RB, "insert"): 83, (Variant.LLRB, "insert"): 246,
        (Variant.RB23, "insert"): 119, (Variant.RB234, "insert"): 83,
        (Variant.RB, "delete"): 54, (Variant.LLRB, "delete"): 3377,
        (Variant.RB23, "delete"): 59, (Variant.RB234, "delete"): 54,
    },
}


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    reps: int = 1
    variants: tuple[Variant, ...] = tuple(Variant)
    seed: int = 0
    log_base: str = "10"
    output_format: str = "csv"
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if self.log_base not in LOG_BASES:
            raise ValueError(f"log base must be one of {sorted(LOG_BASES)}")
        if self.output_format not in ("csv", "md"):
            raise ValueError("output format must be csv or md")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        object.__setattr__(self, "variants", tuple(Variant(v) for v in self.variants))
        if not self.variants:
            raise ValueError("no variants selected")


@dataclass
class ExperimentRow:
    n: int
    reps: int
    variant: Variant
    phase: str
    rot_mean: float
    rot_sd: float
    time_mean: float
    time_sd: float
    raw_rotations: list[int] = field(default_factory=list, repr=False)

    def as_tuple(self) -> tuple:
        return (self.n, self.reps, self.variant.value, self.phase,
                self.rot_mean, self.rot_sd, self.time_mean, self.time_sd)


def normalizer(n: int, log_base: str = "10") -> float:
    if n == 1:
        return 1.0
    return n * math.log(n, LOG_BASES[log_base])


def trial_sequences(n: int, seed_seq: np.random.SeedSequence) -> tuple[list[int], list[int]]:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    keys = rng.choice(1 << 40, size=n, replace=False)
    order = rng.permutation(keys)
    return keys.tolist(), order.tolist()


def run_trial(
    variants: Sequence[Variant], keys: Sequence[int], order: Sequence[int]
) -> dict[Variant, tuple[int, int, int, int]]:
    """Return ``(insert_rot, delete_rot, insert_ns, delete_ns)`` per variant."""
    out = {}
    clock = time.perf_counter_ns
    for v in variants:
        tree = tree_class(v)()
        insert, delete = tree.insert, tree.delete
        t0 = clock()
        for k in keys:
            insert(k)
        t1 = clock()
        r1 = tree.stats.rotations
        for k in order:
            delete(k)
        t2 = clock()
        if t1 < t0 or t2 < t1:
            raise RuntimeError("monotonic clock went backwards")
        if len(tree):
            raise RuntimeError(f"{v.value}: {len(tree)} keys left after deleting all")
        out[v] = (r1, tree.stats.rotations - r1, t1 - t0, t2 - t1)
    return out


def _trial_job(args: tuple) -> dict:
    n, variants, seed_seq = args
    keys, order = trial_sequences(n, seed_seq)
    return run_trial(variants, keys, order)


def _mean_sd(xs: Sequence[float]) -> tuple[float, float]:
    if len(xs) == 1:
        return float(xs[0]), 0.0
    return statistics.fmean(xs), statistics.stdev(xs)


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRow]:
    seqs = np.random.SeedSequence(cfg.seed).spawn(cfg.reps)
    jobs = [(cfg.n, cfg.variants, s) for s in seqs]
    if cfg.jobs > 1 and cfg.reps > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_trial_job, jobs))
    else:
        results = [_trial_job(j) for j in jobs]
    norm = normalizer(cfg.n, cfg.log_base)
    rows = []
    for v in cfg.variants:
        for i, phase in enumerate(PHASES):
            rots = [r[v][i] for r in results]
            times = [r[v][i + 2] / norm for r in results]
            rm, rs = _mean_sd([x * 1000 / norm for x in rots])
            tm, ts = _mean_sd(times)
            vals = (rm, rs, tm, ts)
            if not all(math.isfinite(x) for x in vals):
                raise RuntimeError(f"non-finite statistic for {v.value}/{phase}")
            rows.append(ExperimentRow(cfg.n, cfg.reps, v, phase, rm, rs, tm, ts, rots))
    return rows


# -- reports ----------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def emit_csv(rows: Iterable[ExperimentRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.n, r.reps, r.variant.value, r.phase, _fmt(r.rot_mean), _fmt(r.rot_sd),
                    _fmt(r.time_mean), _fmt(r.time_sd)])
    return buf.getvalue()


def _md_table(rows: list[ExperimentRow], mean_attr: str, sd_attr: str, digits: int) -> list[str]:
    variants = list(dict.fromkeys(r.variant for r in rows))
    grid = list(dict.fromkeys((r.n, r.reps) for r in rows))
    cell = {(r.n, r.variant, r.phase): r for r in rows}
    header = ["n", "reps"] + [f"{p} {v.value}" for p in PHASES for v in variants]
    body = []
    for n, reps in grid:
        line = [str(n), str(reps)]
        for p in PHASES:
            for v in variants:
                r = cell.get((n, v, p))
                line.append("" if r is None else
                            f"{getattr(r, mean_attr):.{digits}f} ± {getattr(r, sd_attr):.{digits}f}")
        body.append(line)
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]

    def render(cols: list[str]) -> str:
        return "| " + " | ".join(c.rjust(w) for c, w in zip(cols, widths)) + " |"

    sep = "|" + "|".join("-" * (w + 1) + ":" for w in widths) + "|"
    return [render(header), sep] + [render(b) for b in body]


def emit_markdown(rows: Iterable[ExperimentRow]) -> str:
    rows = list(rows)
    out = ["Rotations x1000 / (n log n)", ""]
    out += _md_table(rows, "rot_mean", "rot_sd", 1)
    out += ["", "Time ns / (n log n)", ""]
    out += _md_table(rows, "time_mean", "time_sd", 2)
    return "\n".join(out) + "\n"


def emit_report(rows: Iterable[ExperimentRow], fmt: str = "csv") -> str:
    if fmt == "csv":
        return emit_csv(rows)
    if fmt in ("md", "markdown"):
        return emit_markdown(rows)
    raise ValueError(f"unknown format {fmt!r}")


# -- comparison with published means -----------------------------------------


def rebase(value: float, from_base: str, to_base: str) -> float:
    """Convert a normalized rotation mean between logarithm bases."""
    return value * math.log(LOG_BASES[to_base]) / math.log(LOG_BASES[from_base])


def residuals(rows: Iterable[ExperimentRow], from_base: str, to_base: str) -> dict:
    """Relative error against the published means, per (variant, phase)."""
    out = {}
    for r in rows:
        ref = REFERENCE_ROTATIONS.get(r.n, {}).get((r.variant, r.phase))
        if ref is None:
            continue
        out[(r.n, r.variant, r.phase)] = rebase(r.rot_mean, from_base, to_base) / ref - 1
    return out


def best_log_base(rows: Sequence[ExperimentRow], from_base: str) -> tuple[str, dict]:
    """Base whose worst absolute residual is smallest, with its residuals."""
    scored = []
    for b in LOG_BASES:
        res = residuals(rows, from_base, b)
        worst = max((abs(x) for x in res.values()), default=math.inf)
        scored.append((worst, b, res))
    worst, b, res = min(scored, key=lambda t: t[0])
    return b, res


def residual_report(rows: Sequence[ExperimentRow], from_base: str, tolerance: float = 0.10) -> str:
    base, res = best_log_base(rows, from_base)
    lines = [f"best log base: {base}  (generator {GENERATOR})"]
    for (n, v, phase), err in sorted(res.items(), key=lambda t: (t[0][0], t[0][2], t[0][1].value)):
        ref = REFERENCE_ROTATIONS[n][(v, phase)]
        mark = "ok" if abs(err) <= tolerance else "OUT"
        lines.append(f"n={n} {v.value:5s} {phase:6s} ref {ref:6g}  residual {err:+.3f}  {mark}")
    return "\n".join(lines) + "\n"
