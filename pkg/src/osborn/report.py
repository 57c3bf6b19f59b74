"""Tab-delimited summaries and matplotlib figures for one loop."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .enumerate import inverse_cycles  # noqa: E402
from .loop import FiniteLoop  # noqa: E402
from .properties import IDENTITIES, PropertyReport, has_property  # noqa: E402
from .theorems import CATALOGUE  # noqa: E402

STATUS_COLOURS = {"holds": "#4c9a2a", "vacuous": "#b0b0b0", "fails": "#c0392b"}


def _tsv(reports: list[PropertyReport]) -> str:
    lines = ["name\tstatus\twitness\tnote"]
    for r in reports:
        w = ",".join(map(str, r.witness)) if r.witness else ""
        lines.append(f"{r.name}\t{r.status}\t{w}\t{r.note}")
    return "\n".join(lines) + "\n"


def plot_cayley(L: FiniteLoop, ax=None):
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 5))
    n = L.order
    ax.imshow(L.mul_table, cmap="tab20" if n <= 20 else "viridis", interpolation="nearest")
    if n <= 20:
        for i in range(n):
            for j in range(n):
                ax.text(j, i, str(int(L.mul_table[i, j]) + 1), ha="center", va="center",
                        fontsize=7 if n > 10 else 9)
    ticks = np.arange(n)
    ax.set_xticks(ticks, [str(t + 1) for t in ticks], fontsize=7)
    ax.set_yticks(ticks, [str(t + 1) for t in ticks], fontsize=7)
    ax.set_xlabel("y")
    ax.set_ylabel("x")
    ax.set_title(f"x·y  ({L.name or 'loop'}, order {n})")
    return ax


def plot_inverse_cycles(L: FiniteLoop, ax=None):
    """Elements on a circle with an arrow ``x → x^ρ`` for each non-fixed point."""
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 5))
    rep = inverse_cycles(L)
    n = L.order
    order = [v for c in rep.cycles for v in c]
    angle = {v: 2 * math.pi * k / n for k, v in enumerate(order)}
    pos = {v: (math.cos(a), math.sin(a)) for v, a in angle.items()}
    for cyc in rep.cycles:
        if len(cyc) == 1:
            continue
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            ax.annotate("", xy=pos[b], xytext=pos[a],
                        arrowprops=dict(arrowstyle="->", color="#34495e", shrinkA=9, shrinkB=9,
                                        connectionstyle="arc3,rad=0.15"))
    for v, (px, py) in pos.items():
        ax.scatter([px], [py], s=260, color="white", edgecolor="#34495e", zorder=3)
        ax.text(px, py, str(v), ha="center", va="center", fontsize=8, zorder=4)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title("x ↦ x^ρ   cycle lengths " + ",".join(map(str, rep.lengths)))
    return ax


def plot_status(reports: list[PropertyReport], ax=None, title: str = ""):
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 0.3 * len(reports) + 1))
    y = np.arange(len(reports))
    ax.barh(y, np.ones(len(reports)), color=[STATUS_COLOURS[r.status] for r in reports])
    ax.set_yticks(y, [r.name for r in reports], fontsize=8)
    for k, r in enumerate(reports):
        ax.text(0.5, k, r.status, ha="center", va="center", color="white", fontsize=8)
    ax.invert_yaxis()
    ax.set_xticks([])
    ax.set_xlim(0, 1)
    ax.set_title(title)
    return ax


def write_report(L: FiniteLoop, outdir, theorems: bool = True) -> list[Path]:
    """Write ``properties.tsv``, ``cycles.tsv`` (and ``theorems.tsv``) plus
    ``cayley.png``, ``cycles.png`` and ``properties.png``; return the paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    props = [has_property(L, p) for p in IDENTITIES]
    (out / "properties.tsv").write_text(_tsv(props))
    written.append(out / "properties.tsv")

    rep = inverse_cycles(L)
    rows = ["cycle\tlength"] + [" ".join(map(str, c)) + f"\t{len(c)}" for c in rep.cycles]
    (out / "cycles.tsv").write_text("\n".join(rows) + "\n")
    written.append(out / "cycles.tsv")

    thms = []
    if theorems:
        thms = [fn(L) for fn in CATALOGUE.values()]
        (out / "theorems.tsv").write_text(_tsv(thms))
        written.append(out / "theorems.tsv")

    for name, draw in (("cayley.png", plot_cayley), ("cycles.png", plot_inverse_cycles)):
        fig, ax = plt.subplots(figsize=(6, 6))
        draw(L, ax)
        fig.tight_layout()
        fig.savefig(out / name, dpi=120)
        plt.close(fig)
        written.append(out / name)

    panels = [(props, "properties")] + ([(thms, "theorems")] if thms else [])
    fig, axes = plt.subplots(1, len(panels), figsize=(5 * len(panels), 0.3 * len(props) + 1.5),
                             squeeze=False)
    for ax, (reports, title) in zip(axes[0], panels):
        plot_status(reports, ax, title)
    fig.tight_layout()
    fig.savefig(out / "properties.png", dpi=120)
    plt.close(fig)
    written.append(out / "properties.png")
    return written
