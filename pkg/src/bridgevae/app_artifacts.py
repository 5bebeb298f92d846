"""Bundle export: embeddings, per-dimension histograms, scatter projection."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .dataset import DatasetManifest, load_images, subset_entries
from .latent import (
    EmbeddingTable,
    histogram_dim,
    scatter_dims,
    write_embedding_csv,
    write_histogram_csv,
    write_scatter_csv,
)
from .model import load_checkpoint
from .plots import histogram_png, scatter_png


def export_embedding_artifacts(ckpt_path, manifest_path, out_dir,
                               scatter_pair: tuple[int, int] = (1, 7),
                               bins: int = 50, per_label: int | None = None) -> list[Path]:
    """Embed a dataset, then write CSVs and quick-look PNGs per dimension.

    Outputs: ``embeddings.csv``, ``hist_dim<i>.csv`` / ``hist_dim<i>.png``
    for every latent dimension, and ``scatter_dim<i>_<j>.csv`` / ``.png``
    for the chosen pair.
    """
    ckpt = load_checkpoint(ckpt_path)
    vae = ckpt.build()
    manifest_path = Path(manifest_path)
    manifest = DatasetManifest.load(manifest_path)
    entries = subset_entries(manifest, per_label=per_label)
    p = vae.profile
    images = load_images(manifest_path.parent, entries,
                         resize_hw=(p.image_height, p.image_width))
    z_mean, _ = vae.encode(images)
    table = EmbeddingTable(
        sample_ids=[e.path for e in entries],
        labels=np.array([e.label for e in entries], np.int64),
        z_mean=z_mean,
        checkpoint_id=ckpt.checkpoint_id,
    )

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    emb_path = out / "embeddings.csv"
    write_embedding_csv(table, emb_path)
    written.append(emb_path)

    for dim in range(table.latent_dim):
        edges, counts, ref = histogram_dim(table, dim, bins=bins)
        csv_path = out / f"hist_dim{dim}.csv"
        png_path = out / f"hist_dim{dim}.png"
        write_histogram_csv(edges, counts, ref, csv_path)
        histogram_png(edges, counts, ref, png_path, dim=dim)
        written.extend([csv_path, png_path])

    dim_i, dim_j = scatter_pair
    rows = scatter_dims(table, dim_i, dim_j)
    csv_path = out / f"scatter_dim{dim_i}_{dim_j}.csv"
    png_path = out / f"scatter_dim{dim_i}_{dim_j}.png"
    write_scatter_csv(rows, dim_i, dim_j, csv_path)
    scatter_png(rows, dim_i, dim_j, png_path)
    written.extend([csv_path, png_path])
    return written
