"""Charts of bigraded tables (E2 pages, coHH) rendered to image files."""

from __future__ import annotations

from typing import Mapping, Tuple

import matplotlib

matplotlib.use("Agg")
# fixed salt for svg element ids
matplotlib.rcParams["svg.hashsalt"] = "cohh"
import matplotlib.pyplot as plt  # noqa: E402


def plot_bigraded(dims: Mapping[Tuple[int, int], int], path, title: str = "") -> None:
    """Plot nonzero cells at ``(t - s, s)`` labelled by their dimension."""
    fig, ax = plt.subplots(figsize=(6, 4))
    xs, ys = [], []
    for (s, t), d in sorted(dims.items()):
        if not d:
            continue
        xs.append(t - s)
        ys.append(s)
        ax.annotate(str(d), (t - s, s), textcoords="offset points", xytext=(5, 5), fontsize=8)
    ax.scatter(xs, ys, s=30, color="tab:blue")
    ax.set_xlabel("t - s")
    ax.set_ylabel("s")
    if xs:
        ax.set_xlim(min(xs) - 1, max(xs) + 1)
        ax.set_ylim(-0.5, max(ys) + 1)
    ax.grid(True, linewidth=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    # drop software/date metadata so identical inputs give identical files
    suffix = str(path).rsplit(".", 1)[-1].lower()
    meta = {"png": {"Software": None}, "svg": {"Date": None},
            "pdf": {"CreationDate": None}}.get(suffix)
    fig.savefig(path, metadata=meta)
    plt.close(fig)
