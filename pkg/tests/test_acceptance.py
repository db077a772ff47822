"""Acceptance suite: one pass/fail line per criterion.

Long-running by design (about ten minutes on one core).  Lines are printed
in the terminal summary and written to ``reports/acceptance.txt``; the
Table-style residual report goes to ``reports/residuals.txt``.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

from __future__ import annotations

import time
from pathlib import Path

import pytest
from conftest import ACCEPTANCE_LINES
from fixtures import RED_LEAF_25

from rbparity import LLRBTree, RB23Tree, RBTree, Variant, build
from rbparity.bench import ExperimentConfig, residual_report, best_log_base, run_experiment
from rbparity.verification import differential_run, generate_script, rotation_parity_check

REPORTS = Path(__file__).resolve().parents[1] / "reports"

# criterion 1 / 7
FUZZ_OPS = 100_000
FUZZ_UNIVERSE = 1 << 10
FUZZ_SEED = 2026
FUZZ_BUDGET_S = 120.0

# criterion 2
PARITY_N = 10_000
PARITY_SEEDS = range(10)

# criterion 3
CLONE_TRIALS = 100
CLONE_SIZE = 1_000

# criterion 4: (numerator, denominator, phase, published ratio, relative tolerance)
RATIO_N = 100_000
RATIO_REPS = 20
RATIOS = [
    (Variant.LLRB, Variant.RB, "insert", 345 / 117, 0.15),
    (Variant.LLRB, Variant.RB, "delete", 3178 / 76, 0.20),
    (Variant.RB23, Variant.RB, "insert", 167 / 117, 0.10),
    (Variant.RB23, Variant.RB, "delete", 82 / 76, 0.10),
]

# criterion 5
ABS_N = 1_000
ABS_REPS = 1_000
ABS_TOLERANCE = 0.10
ABS_CELLS = [
    (Variant.RB, "insert"), (Variant.RB, "delete"),
    (Variant.LLRB, "insert"), (Variant.LLRB, "delete"),
    (Variant.RB23, "insert"), (Variant.RB23, "delete"),
]

# criterion 8
TIMING_N = 1_000_000
RB234_TIME_FACTOR = 1.25


def record(number: int, ok: bool, text: str, soft: bool = False) -> None:
    tag = ("PASS" if ok else "FAIL") if not soft else ("PASS" if ok else "SOFT-FAIL")
    line = f"[{tag}] criterion {number}: {text}"
    ACCEPTANCE_LINES.append(line)
    REPORTS.mkdir(exist_ok=True)
    with open(REPORTS / "acceptance.txt", "a") as fh:
        fh.write(line + "\n")
    print(line)


@pytest.fixture(scope="module", autouse=True)
def fresh_report():
    REPORTS.mkdir(exist_ok=True)
    (REPORTS / "acceptance.txt").write_text("")
    yield


@pytest.fixture(scope="module")
def fuzz_reports():
    script = generate_script(FUZZ_SEED, FUZZ_OPS, FUZZ_UNIVERSE)
    out = {}
    for v in Variant:
        t0 = time.perf_counter()
        out[v] = (differential_run(script, [v]), time.perf_counter() - t0)
    return out


def test_criterion_1_invariant_fuzz(fuzz_reports):
    total = sum(s for _, s in fuzz_reports.values())
    dirty = [r.summary() for r, _ in fuzz_reports.values() if not r.clean]
    ok = not dirty and total < FUZZ_BUDGET_S
    record(1, ok, f"{FUZZ_OPS} ops x 4 variants over [0, {FUZZ_UNIVERSE}), seed {FUZZ_SEED}: "
                  f"{'clean' if not dirty else dirty[0]}; {total:.1f}s (budget {FUZZ_BUDGET_S:.0f}s)")
    assert not dirty
    assert total < FUZZ_BUDGET_S


def test_criterion_2_rb_rb234_rotation_identity():
    bad = []
    totals = []
    for seed in PARITY_SEEDS:
        rep = rotation_parity_check(PARITY_N, seed)
        totals.append(rep.insert_rotations[0] + rep.delete_rotations[0])
        if not rep.ok or rep.insert_rotations[0] != rep.insert_rotations[1] \
                or rep.delete_rotations[0] != rep.delete_rotations[1]:
            bad.append((seed, [str(m) for m in rep.mismatches], rep.shapes_equal))
    record(2, not bad, f"n={PARITY_N}, {len(PARITY_SEEDS)} seeds: per-op, cumulative and shape "
                       f"identical in {len(PARITY_SEEDS) - len(bad)}/{len(PARITY_SEEDS)} "
                       f"(rotations per seed {min(totals)}..{max(totals)})")
    assert not bad


def test_criterion_3_shared_tree_delete_equivalence():
    rep = rotation_parity_check(1, 0, clone_trials=CLONE_TRIALS, clone_size=CLONE_SIZE)
    clone_bad = [m for m in rep.mismatches if m.stage == "clone-delete"]
    record(3, not clone_bad, f"{CLONE_TRIALS} single-delete clones of {CLONE_SIZE}-key 2-3 RB trees: "
                             f"{CLONE_TRIALS - len(clone_bad)} equal rotation counts")
    assert not clone_bad


def test_criterion_4_rotation_ratios():
    rows = run_experiment(ExperimentConfig(
        n=RATIO_N, reps=RATIO_REPS, seed=4, variants=(Variant.RB, Variant.LLRB, Variant.RB23)))
    mean = {(r.variant, r.phase): r.rot_mean for r in rows}
    failures = []
    for num, den, phase, want, tol in RATIOS:
        got = mean[(num, phase)] / mean[(den, phase)]
        ok = abs(got / want - 1) <= tol
        record(4, ok, f"{num.value}/{den.value} {phase} rotations {got:.3f} vs {want:.3f} "
                      f"(+/-{tol:.0%}, n={RATIO_N}, reps={RATIO_REPS})")
        if not ok:
            failures.append(f"{num.value}/{den.value} {phase}: {got:.3f} vs {want:.3f}")
    assert not failures, failures


def test_criterion_5_absolute_rotations_best_base():
    rows = run_experiment(ExperimentConfig(
        n=ABS_N, reps=ABS_REPS, seed=5, variants=(Variant.RB, Variant.LLRB, Variant.RB23)))
    base, res = best_log_base(rows, "10")
    report = residual_report(rows, "10", ABS_TOLERANCE)
    REPORTS.mkdir(exist_ok=True)
    (REPORTS / "residuals.txt").write_text(report)
    cells = {(v, p): res[(ABS_N, v, p)] for v, p in ABS_CELLS}
    out = {f"{v.value} {p}": f"{e:+.3f}" for (v, p), e in cells.items() if abs(e) > ABS_TOLERANCE}
    strict = not out
    detail = ", ".join(f"{k} {e}" for k, e in out.items())
    record(5, strict, f"n={ABS_N}, reps={ABS_REPS}, best base {base}: "
                      + ("all six within 10%" if strict else
                         f"outside 10%: {detail}; closest base and residuals recorded in reports/residuals.txt"))
    # when the strict match is missed the criterion asks for the closest base
    # and its residuals to be recorded, with the ratios of criterion 4 as the gate
    assert (REPORTS / "residuals.txt").read_text().startswith(f"best log base: {base}")


def test_criterion_6_llrb_red_leaf_delete():
    llrb = build(LLRBTree, RED_LEAF_25)
    rb = build(RBTree, RED_LEAF_25)
    rb23 = build(RB23Tree, RED_LEAF_25)
    assert llrb.validate() == rb.validate() == rb23.validate() == []
    for t in (llrb, rb, rb23):
        t.delete(25)
    counts = (llrb.stats.rotations, rb.stats.rotations, rb23.stats.rotations)
    ok = counts == (4, 0, 0)
    record(6, ok, f"delete red leaf 25: llrb {counts[0]} rotations (want 4), rb {counts[1]}, rb23 {counts[2]} (want 0)")
    assert ok


def test_criterion_7_fixup_step_bound(fuzz_reports):
    ratios = {v.value: r.max_step_ratio for v, (r, _) in fuzz_reports.items()}
    bound_hits = [r for r, _ in fuzz_reports.values()
                  if r.divergence is not None and r.divergence.kind == "fixup-bound"]
    ok = not bound_hits and all(r.clean for r, _ in fuzz_reports.values()) and max(ratios.values()) <= 2
    record(7, ok, "max fixup steps / height per op: "
                  + ", ".join(f"{k} {x:.2f}" for k, x in ratios.items()) + " (bound 2)")
    assert ok


def test_criterion_8_timing_informational():
    rows = run_experiment(ExperimentConfig(n=TIMING_N, reps=1, seed=8,
                                           variants=(Variant.RB, Variant.LLRB, Variant.RB234)))
    t = {(r.variant, r.phase): r.time_mean for r in rows}
    per = {v: t[(v, "insert")] + t[(v, "delete")] for v in (Variant.RB, Variant.LLRB, Variant.RB234)}
    llrb_slower = per[Variant.LLRB] > per[Variant.RB]
    close = per[Variant.RB234] <= RB234_TIME_FACTOR * per[Variant.RB]
    record(8, llrb_slower and close,
           f"n={TIMING_N}: time ratio llrb/rb {per[Variant.LLRB] / per[Variant.RB]:.2f} (want > 1), "
           f"rb234/rb {per[Variant.RB234] / per[Variant.RB]:.2f} (want <= {RB234_TIME_FACTOR})",
           soft=True)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
