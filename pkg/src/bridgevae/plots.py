"""Quick-look raster plots for exported distributions."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def histogram_png(edges, counts, ref, path, dim: int | None = None) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    centers = (edges[:-1] + edges[1:]) / 2.0
    ax.bar(centers, counts, width=(edges[1] - edges[0]) * 0.95, color="#4878cf")
    ax.plot(centers, ref, color="#d65f5f", lw=2, label="standard normal")
    ax.set_xlabel(f"z[{dim}]" if dim is not None else "z")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


def scatter_png(rows: np.ndarray, dim_i: int, dim_j: int, path) -> None:
    fig, ax = plt.subplots(figsize=(6, 5))
    labels = rows[:, 2].astype(int)
    cmap = plt.get_cmap("tab10")
    for label in np.unique(labels):
        sel = labels == label
        ax.scatter(rows[sel, 0], rows[sel, 1], s=4, color=cmap(label % 10),
                   label=str(label), alpha=0.6)
    ax.set_xlabel(f"z[{dim_i}]")
    ax.set_ylabel(f"z[{dim_j}]")
    ax.legend(markerscale=2, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
