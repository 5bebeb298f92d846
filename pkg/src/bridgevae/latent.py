"""Latent-space exploration: embeddings, centroids, morphs, boundary probes.

Everything here is deterministic given a checkpoint: embeddings use the
inference-mode z_mean, morphs decode points on the straight segment between
two latent vectors, and boundary grids enumerate the sign corners of a
hypercube at a fixed magnitude per dimension.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model.vae import VAE


@dataclass
class EmbeddingTable:
    """Per-sample latent coordinates plus labels."""

    sample_ids: list[str]
    labels: np.ndarray          # (N,) int
    z_mean: np.ndarray          # (N, latent_dim) float
    checkpoint_id: str = ""

    def __len__(self):
        return len(self.sample_ids)

    @property
    def latent_dim(self) -> int:
        return self.z_mean.shape[1]


@dataclass
class MorphTrack:
    a: np.ndarray
    b: np.ndarray
    steps: int
    points: np.ndarray          # (steps, latent_dim)
    frames: np.ndarray          # (steps, H, W)


def embed_dataset(vae: VAE, images: np.ndarray, labels: np.ndarray,
                  sample_ids=None, batch_size: int = 32) -> EmbeddingTable:
    """One row per sample: inference-mode z_mean under the given model."""
    if images.shape[0] != labels.shape[0]:
        raise ValueError(f"{images.shape[0]} images vs {labels.shape[0]} labels")
    z_mean, _ = vae.encode(images, batch_size=batch_size)
    if sample_ids is None:
        sample_ids = [str(i) for i in range(images.shape[0])]
    return EmbeddingTable(sample_ids=list(sample_ids), labels=np.asarray(labels),
                          z_mean=z_mean)


def centroids(table: EmbeddingTable) -> dict[int, np.ndarray]:
    """Arithmetic mean of z_mean per label."""
    out = {}
    for label in np.unique(table.labels):
        rows = table.z_mean[table.labels == label]
        if rows.size == 0:
            raise ValueError(f"label {label} has no rows")
        out[int(label)] = rows.mean(axis=0, dtype=np.float64)
    if not out:
        raise ValueError("embedding table is empty")
    return out


def morph(vae: VAE, a: np.ndarray, b: np.ndarray, steps: int = 11) -> MorphTrack:
    """Decode the straight latent segment from a to b in ``steps`` points."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    a = np.asarray(a, np.float32)
    b = np.asarray(b, np.float32)
    ts = np.arange(steps, dtype=np.float32) / (steps - 1)
    points = (1.0 - ts)[:, None] * a[None, :] + ts[:, None] * b[None, :]
    frames = vae.decode(points)[:, :, :, 0]
    return MorphTrack(a=a, b=b, steps=steps, points=points, frames=frames)


def boundary_grid(magnitude: float, latent_dim: int = 8) -> np.ndarray:
    """All +-magnitude sign corners, lexicographic (-m first, +m last)."""
    if magnitude <= 0:
        raise ValueError(f"magnitude must be positive, got {magnitude}")
    n = 2**latent_dim
    out = np.empty((n, latent_dim), np.float32)
    for i in range(n):
        for j in range(latent_dim):
            bit = (i >> (latent_dim - 1 - j)) & 1
            out[i, j] = magnitude if bit else -magnitude
    return out


def histogram_dim(table: EmbeddingTable, dim: int, bins: int = 50):
    """Equal-width histogram of one latent dimension plus a reference curve.

    Returns (edges, counts, ref) where ref samples the standard normal
    density at the bin centers, scaled to total count x bin width.
    """
    if not 0 <= dim < table.latent_dim:
        raise ValueError(f"dim {dim} out of range [0, {table.latent_dim})")
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    values = table.z_mean[:, dim]
    counts, edges = np.histogram(values, bins=bins)
    centers = (edges[:-1] + edges[1:]) / 2.0
    width = edges[1] - edges[0]
    ref = len(table) * width * np.exp(-0.5 * centers**2) / math.sqrt(2.0 * math.pi)
    return edges, counts, ref


def scatter_dims(table: EmbeddingTable, dim_i: int, dim_j: int) -> np.ndarray:
    """(N, 3) projection rows (z_i, z_j, label)."""
    d = table.latent_dim
    if not (0 <= dim_i < d and 0 <= dim_j < d):
        raise ValueError(f"dims ({dim_i}, {dim_j}) out of range [0, {d})")
    if dim_i == dim_j:
        raise ValueError(f"scatter dims must differ, got ({dim_i}, {dim_j})")
    return np.stack([table.z_mean[:, dim_i], table.z_mean[:, dim_j],
                     table.labels.astype(table.z_mean.dtype)], axis=1)


# CSV round trips -----------------------------------------------------------

def write_embedding_csv(table: EmbeddingTable, path) -> None:
    with open(path, "w", newline="") as f:
        f.write(f"# source_checkpoint: {table.checkpoint_id}\n")
        writer = csv.writer(f)
        writer.writerow(["sample", "label"] + [f"z{i}" for i in range(table.latent_dim)])
        for sid, label, z in zip(table.sample_ids, table.labels, table.z_mean):
            writer.writerow([sid, int(label)] + [f"{v:.8g}" for v in z])


def read_embedding_csv(path) -> EmbeddingTable:
    checkpoint_id = ""
    with open(path, newline="") as f:
        first = f.readline()
        if first.startswith("#"):
            checkpoint_id = first.split(":", 1)[1].strip() if ":" in first else ""
            header = f.readline()
        else:
            header = first
        dim = len(header.strip().split(",")) - 2
        ids, labels, zs = [], [], []
        for row in csv.reader(f):
            if not row:
                continue
            ids.append(row[0])
            labels.append(int(row[1]))
            zs.append([float(v) for v in row[2:]])
    z = np.array(zs, np.float32).reshape(len(ids), dim)
    return EmbeddingTable(sample_ids=ids, labels=np.array(labels, np.int64),
                          z_mean=z, checkpoint_id=checkpoint_id)


def write_histogram_csv(edges, counts, ref, path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["bin_left", "bin_right", "count", "normal_ref"])
        for left, right, c, r in zip(edges[:-1], edges[1:], counts, ref):
            writer.writerow([f"{left:.8g}", f"{right:.8g}", int(c), f"{r:.8g}"])


def write_scatter_csv(rows: np.ndarray, dim_i: int, dim_j: int, path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([f"z{dim_i}", f"z{dim_j}", "label"])
        for zi, zj, label in rows:
            writer.writerow([f"{zi:.8g}", f"{zj:.8g}", int(label)])


def save_morph_frames(track: MorphTrack, out_dir, name_a: str, name_b: str) -> list[Path]:
    """Write numbered morph frames ``morph_<A>_<B>_<k>.png``."""
    from .imageio import save_png

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    safe_a, safe_b = name_a.replace(" ", "-"), name_b.replace(" ", "-")
    paths = []
    for k in range(track.steps):
        path = out / f"morph_{safe_a}_{safe_b}_{k}.png"
        save_png(track.frames[k], path)
        paths.append(path)
    return paths
