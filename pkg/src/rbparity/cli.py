"""``bench`` command line: run experiments, fuzz-validate, trace scripts.

Exit status: 0 clean, 1 invariant violation or divergence, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import Variant, tree_class
from .bench import LOG_BASES, ExperimentConfig, emit_report, residual_report, run_experiment
from .verification import OpScript, differential_run, generate_script

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
VARIANT_CHOICES = [v.value for v in Variant] + ["all"]


def u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def variants_of(chosen: Optional[Sequence[str]]) -> tuple[Variant, ...]:
    if not chosen or "all" in chosen:
        return tuple(Variant)
    return tuple(dict.fromkeys(Variant(v) for v in chosen))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bench", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="rotation/timing experiment")
    run.add_argument("--variant", action="append", choices=VARIANT_CHOICES,
                     help="repeatable; default all")
    run.add_argument("--n", type=positive, nargs="+", required=True, help="key counts")
    run.add_argument("--reps", type=positive, default=1)
    run.add_argument("--seed", type=u64, default=0)
    run.add_argument("--log-base", choices=sorted(LOG_BASES), default="10")
    run.add_argument("--format", choices=["csv", "md"], default="csv")
    run.add_argument("--jobs", type=positive, default=1, help="worker processes for trials")
    run.add_argument("--exclusive", action="store_true",
                     help="run trials one at a time for clean timings (overrides --jobs)")
    run.add_argument("--out", type=Path, help="write the report here instead of stdout")
    run.add_argument("--figure-dir", type=Path, help="write rotation and time plots here")
    run.add_argument("--reference", action="store_true",
                     help="append residuals against the published rotation means")

    val = sub.add_parser("validate", help="differential fuzz against the oracle")
    val.add_argument("--variant", action="append", choices=VARIANT_CHOICES)
    val.add_argument("--n", type=positive, default=10_000, help="number of ops")
    val.add_argument("--seed", type=u64, default=0)
    val.add_argument("--universe", type=positive, default=1 << 20)
    val.add_argument("--mode", choices=["fuzz", "distinct"], default="fuzz")
    val.add_argument("--repro-out", type=Path, help="write the shrunk script on failure")

    tr = sub.add_parser("trace", help="replay a script, dumping DOT after every op")
    tr.add_argument("--variant", action="append", choices=VARIANT_CHOICES)
    tr.add_argument("--script", type=Path, required=True)
    tr.add_argument("--dot-dir", type=Path, required=True)
    return p


def cmd_run(args: argparse.Namespace, out) -> int:
    variants = variants_of(args.variant)
    jobs = 1 if args.exclusive else args.jobs
    rows = []
    for n in args.n:
        cfg = ExperimentConfig(n=n, reps=args.reps, variants=variants, seed=args.seed,
                               log_base=args.log_base, output_format=args.format, jobs=jobs)
        rows.extend(run_experiment(cfg))
    text = emit_report(rows, args.format)
    if args.reference:
        text += "\n" + residual_report(rows, args.log_base)
    if args.out:
        args.out.write_text(text)
    else:
        out.write(text)
    if args.figure_dir:
        from .plotting import plot_rotations, plot_times

        args.figure_dir.mkdir(parents=True, exist_ok=True)
        for path in (plot_rotations(rows, args.figure_dir / "rotations.png", args.log_base),
                     plot_times(rows, args.figure_dir / "times.png")):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, out) -> int:
    script = generate_script(args.seed, args.n, args.universe, args.mode)
    report = differential_run(script, variants_of(args.variant))
    out.write(report.summary() + "\n")
    if report.clean:
        return EXIT_OK
    if args.repro_out and report.reproduction is not None:
        report.reproduction.save(args.repro_out)
        out.write(f"reproduction written to {args.repro_out}\n")
    return EXIT_VIOLATION


def cmd_trace(args: argparse.Namespace, out) -> int:
    script = OpScript.load(args.script)
    variants = variants_of(args.variant)
    status = EXIT_OK
    for v in variants:
        d = args.dot_dir / v.value if len(variants) > 1 else args.dot_dir
        d.mkdir(parents=True, exist_ok=True)
        tree = tree_class(v)()
        tree.trace = []
        (d / "0000_initial.dot").write_text(tree.to_dot())
        for i, (kind, key) in enumerate(script.ops, 1):
            del tree.trace[:]
            rot0 = tree.stats.rotations
            if kind == "I":
                result = tree.insert(key)
            elif kind == "D":
                result = tree.delete(key)
            else:
                result = tree.search(key)
            (d / f"{i:04d}_{kind}_{key}.dot").write_text(tree.to_dot())
            rules = " ".join(tree.trace) or "-"
            out.write(f"{v.value} {i} {kind} {key} -> {result} "
                      f"rotations={tree.stats.rotations - rot0} rules: {rules}\n")
            bad = tree.validate()
            if bad:
                out.write(f"{v.value} {i} INVARIANT {bad[0].rule}: {bad[0].detail}\n")
                status = EXIT_VIOLATION
                break
    return status


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "run":
            return cmd_run(args, out)
        if args.command == "validate":
            return cmd_validate(args, out)
        return cmd_trace(args, out)
    except (ValueError, OSError) as exc:
        print(f"bench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
