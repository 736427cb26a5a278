"""Figures for scan reports, written next to the delimited output."""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

CASE_ORDER = ("a", "b", "c", "d", "e", "regular-nonabelian", "unclassified", "-")
CASE_COLORS = {
    "a": "#4c72b0",
    "b": "#55a868",
    "c": "#8172b2",
    "d": "#c44e52",
    "e": "#ccb974",
    "regular-nonabelian": "#64b5cd",
    "unclassified": "#000000",
    "-": "#bbbbbb",
}


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(direction="in")


def case_histogram(rows: Sequence[dict], path: Path) -> Path:
    counts = Counter(r["case"] for r in rows if not str(r["case"]).startswith("error"))
    labels = [c for c in CASE_ORDER if counts.get(c)]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(labels, [counts[c] for c in labels], color=[CASE_COLORS[c] for c in labels])
    ax.set_xlabel("case label")
    ax.set_ylabel("triples")
    _style(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def derangement_scatter(rows: Sequence[dict], path: Path) -> Path:
    """n * s0 against degree, so the 1/n and 2/n lines are horizontal."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for case in CASE_ORDER:
        pts = [
            (int(r["degree"]), int(r["degree"]) * int(r["s0_num"]) / int(r["s0_den"]))
            for r in rows
            if r["case"] == case
        ]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, s=18, color=CASE_COLORS[case], label=case, alpha=0.8)
    ax.axhline(1, color="grey", lw=0.8, ls=":")
    ax.axhline(2, color="grey", lw=0.8, ls="--")
    ax.set_xlabel("degree n")
    ax.set_ylabel(r"$n \cdot s_0$")
    ax.legend(fontsize=8, frameon=False, ncol=2)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_scan_figures(rows: Sequence[dict], outdir: Path, stem: str = "scan") -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = [r for r in rows if not str(r["case"]).startswith("error")]
    return [
        case_histogram(rows, outdir / f"{stem}_cases.png"),
        derangement_scatter(rows, outdir / f"{stem}_s0.png"),
    ]
