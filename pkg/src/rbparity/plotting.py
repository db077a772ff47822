"""Figures for experiment rows (Agg backend, files only)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import PHASES, ExperimentRow  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "savefig.dpi": 150,
}

COLORS = {"rb": "#444444", "llrb": "#c0392b", "rb23": "#2874a6", "rb234": "#7d8c3c"}


def _grid(rows: Sequence[ExperimentRow]):
    variants = list(dict.fromkeys(r.variant for r in rows))
    ns = sorted({r.n for r in rows})
    cell = {(r.n, r.variant, r.phase): r for r in rows}
    return variants, ns, cell


def plot_rotations(rows: Sequence[ExperimentRow], path: "str | Path", log_base: str = "10") -> Path:
    """Normalized rotations per variant, one panel per phase.

    A single ``n`` gives grouped bars with stddev whiskers; several give
    lines over ``n`` on a log axis.
    """
    variants, ns, cell = _grid(rows)
    path = Path(path)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(8, 3.2))
        for ax, phase in zip(axes, PHASES):
            if len(ns) == 1:
                n = ns[0]
                xs = range(len(variants))
                means = [cell[(n, v, phase)].rot_mean for v in variants]
                sds = [cell[(n, v, phase)].rot_sd for v in variants]
                ax.bar(xs, means, yerr=sds, capsize=3,
                       color=[COLORS.get(v.value, "gray") for v in variants])
                ax.set_xticks(list(xs), [v.value for v in variants])
                ax.set_title(f"{phase}, n={n}")
                if max(means, default=0) > 10 * max(min(means, default=1), 1):
                    ax.set_yscale("log")
            else:
                for v in variants:
                    pts = [(n, cell[(n, v, phase)]) for n in ns if (n, v, phase) in cell]
                    ax.errorbar([n for n, _ in pts], [r.rot_mean for _, r in pts],
                                yerr=[r.rot_sd for _, r in pts], marker="o", ms=3,
                                label=v.value, color=COLORS.get(v.value),
                                ls="--" if v.value == "rb234" else "-")
                ax.set_xscale("log")
                ax.set_yscale("log")
                ax.set_xlabel("n")
                ax.set_title(phase)
                ax.legend()
            ax.set_ylabel(f"rotations x1000 / (n log{log_base} n)")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def plot_times(rows: Sequence[ExperimentRow], path: "str | Path") -> Path:
    """Normalized time per phase, variants side by side."""
    variants, ns, cell = _grid(rows)
    path = Path(path)
    width = 0.8 / max(len(variants), 1)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(8, 3.2), sharey=True)
        for ax, phase in zip(axes, PHASES):
            for j, v in enumerate(variants):
                xs = [i + j * width for i in range(len(ns))]
                ax.bar(xs, [cell[(n, v, phase)].time_mean for n in ns], width,
                       yerr=[cell[(n, v, phase)].time_sd for n in ns], capsize=2,
                       label=v.value, color=COLORS.get(v.value))
            ax.set_xticks([i + 0.4 - width / 2 for i in range(len(ns))], [str(n) for n in ns])
            ax.set_xlabel("n")
            ax.set_title(phase)
        axes[0].set_ylabel("ns / (n log n)")
        axes[0].legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
