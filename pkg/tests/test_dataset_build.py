"""Dataset assembly: files, manifest, loader (single subtype for speed)."""

import numpy as np
import pytest
from PIL import Image

from bridgevae.dataset import (
    DatasetManifest,
    LABEL_DICTIONARY,
    build_dataset,
    load_dataset,
    load_images,
    subset_entries,
)
from bridgevae.imageio import load_png, save_png

SUBTYPE = "Beam V_type"


@pytest.fixture(scope="module")
def one_subtype(tmp_path_factory):
    out = tmp_path_factory.mktemp("data")
    manifest = build_dataset(out, seed=7, subtypes=[SUBTYPE])
    return out, manifest


def test_counts_and_layout(one_subtype):
    out, manifest = one_subtype
    assert len(manifest.entries) == 1200
    files = sorted((out / SUBTYPE).glob("*.png"))
    assert len(files) == 1200
    assert manifest.label_dictionary == LABEL_DICTIONARY
    assert manifest.seed == 7
    first = manifest.entries[0]
    assert first.path == f"{SUBTYPE}/00_-0.3_1_1.png"
    assert first.label == LABEL_DICTIONARY[SUBTYPE]


def test_png_format(one_subtype):
    out, manifest = one_subtype
    with Image.open(out / manifest.entries[0].path) as im:
        assert im.size == (512, 128)
        assert im.mode == "L"


def test_manifest_round_trip(one_subtype):
    out, manifest = one_subtype
    loaded = DatasetManifest.load(out / "manifest.json")
    assert loaded == manifest


def test_rebuild_is_byte_identical(one_subtype, tmp_path):
    out, manifest = one_subtype
    again = build_dataset(tmp_path, seed=7, subtypes=[SUBTYPE])
    assert again == manifest
    assert (tmp_path / "manifest.json").read_bytes() == (out / "manifest.json").read_bytes()
    for e in manifest.entries[:40]:
        assert (tmp_path / e.path).read_bytes() == (out / e.path).read_bytes()


def test_loader_order_and_values(one_subtype):
    out, manifest = one_subtype
    images, labels = load_dataset(out / "manifest.json", per_label=50)
    assert images.shape == (50, 128, 512, 1)
    assert images.dtype == np.float32
    assert images.min() >= 0.0 and images.max() <= 1.0
    assert (labels == LABEL_DICTIONARY[SUBTYPE]).all()


def test_loader_resize(one_subtype):
    out, _ = one_subtype
    images, _ = load_dataset(out / "manifest.json", per_label=4, resize_hw=(64, 256))
    assert images.shape == (4, 64, 256, 1)


def test_subset_spreads_frames(one_subtype):
    _, manifest = one_subtype
    picked = subset_entries(manifest, per_label=100)
    assert len(picked) == 100
    assert len({e.frame for e in picked}) == 16


def test_loader_names_missing_entry(one_subtype, tmp_path):
    out, manifest = one_subtype
    entry = manifest.entries[3]
    with pytest.raises(OSError, match=entry.path.replace("\\", "/")[:12]):
        load_images(tmp_path, [entry])


def test_png_round_trip_quantization(tmp_path):
    rng = np.random.default_rng(0)
    img = rng.random((128, 512)).astype(np.float32)
    path = tmp_path / "rt.png"
    save_png(img, path)
    back = load_png(path)
    assert back.shape == img.shape
    assert np.abs(back - img).max() <= 0.5 / 255.0 + 1e-6
