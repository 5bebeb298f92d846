"""Latent-space tooling: embeddings, centroids, morphs, grids, projections."""

import itertools

import numpy as np
import pytest

from bridgevae.dataset import LABEL_DICTIONARY
from bridgevae.latent import (
    EmbeddingTable,
    boundary_grid,
    centroids,
    embed_dataset,
    histogram_dim,
    morph,
    read_embedding_csv,
    scatter_dims,
    write_embedding_csv,
)
from bridgevae.rng import Rng


def random_table(n=100, dim=8, seed=0, n_labels=4) -> EmbeddingTable:
    rng = Rng(seed)
    return EmbeddingTable(
        sample_ids=[f"s{i}" for i in range(n)],
        labels=(rng.uniform((n,)) * n_labels).astype(np.int64),
        z_mean=rng.normal((n, dim)).astype(np.float32),
        checkpoint_id="abc123",
    )


def test_embed_rows_and_determinism(tiny_trained):
    vae, _, images, _ = tiny_trained
    labels = np.zeros(len(images), np.int64)
    t1 = embed_dataset(vae, images, labels)
    t2 = embed_dataset(vae, images, labels)
    assert len(t1) == len(images)
    assert (t1.z_mean == t2.z_mean).all()


def test_centroids_degenerate_and_midpoint():
    z = np.array([[1.0, 2.0], [1.0, 2.0], [0.0, 0.0], [4.0, 6.0]], np.float32)
    labels = np.array([0, 0, 1, 1])
    table = EmbeddingTable(["a", "b", "c", "d"], labels, z)
    c = centroids(table)
    assert (c[0] == np.array([1.0, 2.0])).all()
    assert (c[1] == np.array([2.0, 3.0])).all()


def test_centroids_match_brute_force_oracle():
    table = random_table(100, dim=8, seed=3)
    c = centroids(table)
    for label in np.unique(table.labels):
        total = np.zeros(8)
        count = 0
        for lab, z in zip(table.labels, table.z_mean):
            if lab == label:
                total += z
                count += 1
        assert np.abs(c[int(label)] - total / count).max() < 1e-9


def test_centroids_permutation_invariant():
    table = random_table(60, seed=4)
    perm = Rng(5).permutation(60)
    shuffled = EmbeddingTable(
        [table.sample_ids[i] for i in perm], table.labels[perm], table.z_mean[perm])
    a, b = centroids(table), centroids(shuffled)
    for label in a:
        assert np.abs(a[label] - b[label]).max() < 1e-6


def test_centroids_empty_table_rejected():
    table = EmbeddingTable([], np.array([], np.int64), np.zeros((0, 8), np.float32))
    with pytest.raises(ValueError):
        centroids(table)


def test_morph_endpoints_and_degenerate(tiny_trained):
    vae, _, images, _ = tiny_trained
    z_mean, _ = vae.encode(images[:2])
    a, b = z_mean[0], z_mean[1]

    track = morph(vae, a, b, steps=2)
    direct_a = vae.decode(a[None, :])[0, :, :, 0]
    direct_b = vae.decode(b[None, :])[0, :, :, 0]
    assert (track.frames[0] == direct_a).all()
    assert (track.frames[1] == direct_b).all()

    same = morph(vae, a, a, steps=5)
    for k in range(5):
        assert (same.frames[k] == same.frames[0]).all()


def test_morph_points_are_affine(tiny_trained):
    vae = tiny_trained[0]
    a = np.zeros(vae.profile.latent_dim, np.float32)
    b = np.ones(vae.profile.latent_dim, np.float32)
    track = morph(vae, a, b, steps=11)
    assert track.points.shape == (11, vae.profile.latent_dim)
    for k, t in enumerate(np.arange(11) / 10.0):
        assert np.abs(track.points[k] - t).max() < 1e-6


def test_morph_rejects_short_tracks(tiny_trained):
    vae = tiny_trained[0]
    z = np.zeros(vae.profile.latent_dim, np.float32)
    with pytest.raises(ValueError, match="steps"):
        morph(vae, z, z, steps=1)


def test_all_28_subtype_pairs():
    pairs = list(itertools.combinations(sorted(LABEL_DICTIONARY), 2))
    assert len(pairs) == 28


def test_boundary_grid_structure():
    for magnitude in (100.0, 5.0, 4.0, 3.0):
        grid = boundary_grid(magnitude)
        assert grid.shape == (256, 8)
        assert (np.abs(grid) == magnitude).all()
        assert len({tuple(row) for row in grid.tolist()}) == 256
        assert (grid[0] == -magnitude).all()
        assert (grid[-1] == magnitude).all()
    # Lexicographic: first coordinate flips slowest.
    grid = boundary_grid(4.0)
    assert (grid[:128, 0] == -4.0).all() and (grid[128:, 0] == 4.0).all()
    assert grid[1, 7] == 4.0 and grid[1, 6] == -4.0


def test_boundary_grid_rejects_nonpositive():
    with pytest.raises(ValueError):
        boundary_grid(0.0)


def test_histogram_conservation_and_reference():
    table = random_table(100_000, dim=2, seed=6)
    edges, counts, ref = histogram_dim(table, 0, bins=40)
    assert counts.sum() == len(table)
    assert len(edges) == 41 and len(ref) == 40
    # z_mean is standard normal here: counts within 5 sigma of the reference.
    sigma = np.sqrt(np.maximum(ref, 1.0))
    assert (np.abs(counts - ref) < 5 * sigma + 1).all()


def test_histogram_degenerate_single_bin():
    table = EmbeddingTable(
        ["a", "b", "c"], np.zeros(3, np.int64), np.full((3, 2), 1.5, np.float32))
    _, counts, _ = histogram_dim(table, 1, bins=10)
    assert counts.sum() == 3
    assert (counts > 0).sum() == 1


def test_scatter_projection():
    table = random_table(50, dim=8, seed=7)
    rows = scatter_dims(table, 1, 7)
    assert rows.shape == (50, 3)
    swapped = scatter_dims(table, 7, 1)
    assert (swapped[:, 0] == rows[:, 1]).all()
    assert (swapped[:, 1] == rows[:, 0]).all()
    with pytest.raises(ValueError, match="differ"):
        scatter_dims(table, 3, 3)
    with pytest.raises(ValueError, match="range"):
        scatter_dims(table, 0, 8)


def test_embedding_csv_round_trip(tmp_path):
    table = random_table(20, dim=4, seed=8)
    path = tmp_path / "emb.csv"
    write_embedding_csv(table, path)
    back = read_embedding_csv(path)
    assert back.sample_ids == table.sample_ids
    assert (back.labels == table.labels).all()
    assert np.abs(back.z_mean - table.z_mean).max() < 1e-6
    assert back.checkpoint_id == "abc123"
