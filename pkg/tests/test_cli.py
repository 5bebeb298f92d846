"""CLI subcommands on a small end-to-end pipeline."""

import json

import numpy as np
import pytest
from PIL import Image

from bridgevae.cli import main
from bridgevae.dataset import LABEL_DICTIONARY
from bridgevae.imageio import load_png
from bridgevae.model import ModelCheckpoint, load_checkpoint
from bridgevae.rng import Rng


@pytest.fixture(scope="module")
def workspace(tmp_path_factory, tiny_trained):
    """Dataset (one subtype), tiny checkpoint, embeddings, centroids."""
    root = tmp_path_factory.mktemp("cli")
    data = root / "data"
    assert main(["gen-data", "--out", str(data), "--seed", "3",
                 "--subtypes", "Beam Three_span"]) == 0

    vae = tiny_trained[0]
    ckpt_path = root / "tiny.ckpt"
    ModelCheckpoint.from_vae(vae, metadata={"seed": 5}).save(ckpt_path)
    return root, data, ckpt_path


def test_gen_data_counts(workspace):
    _, data, _ = workspace
    files = list((data / "Beam Three_span").glob("*.png"))
    assert len(files) == 1200
    manifest = json.loads((data / "manifest.json").read_text())
    assert manifest["label_dictionary"] == LABEL_DICTIONARY


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["gen-data", "--out", "x", "--frobnicate"])
    assert exc.value.code == 2


def test_missing_checkpoint_is_diagnostic_exit_1(tmp_path, capsys):
    rc = main(["decode", "--ckpt", str(tmp_path / "nope.ckpt"), "--z", "0,0,0",
               "--out", str(tmp_path / "out.png")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_decode_writes_png(workspace, tmp_path):
    _, _, ckpt_path = workspace
    out = tmp_path / "zero.png"
    rc = main(["decode", "--ckpt", str(ckpt_path), "--z", "0,0,0", "--out", str(out)])
    assert rc == 0
    with Image.open(out) as im:
        assert im.mode == "L"
        assert im.size == (32, 32)


def test_decode_rejects_wrong_length(workspace, tmp_path, capsys):
    _, _, ckpt_path = workspace
    rc = main(["decode", "--ckpt", str(ckpt_path), "--z", "0,0", "--out",
               str(tmp_path / "x.png")])
    assert rc == 1
    assert "checkpoint wants 3" in capsys.readouterr().err


def test_embed_centroids_morph_chain(workspace, tmp_path):
    root, data, ckpt_path = workspace
    emb = tmp_path / "emb.csv"
    # The tiny checkpoint profile is 32x32; embed resizes dataset images.
    rc = main(["embed", "--ckpt", str(ckpt_path), "--data", str(data / "manifest.json"),
               "--out", str(emb), "--per-label", "12"])
    assert rc == 0
    assert emb.read_text().startswith("# source_checkpoint:")

    cents = tmp_path / "centroids.json"
    assert main(["centroids", "--embeddings", str(emb), "--out", str(cents)]) == 0
    doc = json.loads(cents.read_text())
    assert "Beam Three_span" in doc["labels"]
    assert len(doc["labels"]["Beam Three_span"]) == 3
    assert doc["checkpoint_id"] == load_checkpoint(ckpt_path).checkpoint_id

    morph_dir = tmp_path / "morph"
    rc = main(["morph", "--ckpt", str(ckpt_path), "--from", "Beam Three_span",
               "--to", "0.5,0.5,0.5", "--steps", "5", "--centroids", str(cents),
               "--out", str(morph_dir)])
    assert rc == 0
    frames = sorted(morph_dir.glob("morph_*_[0-9].png"))
    assert len(frames) == 5
    assert (morph_dir / "morph_Beam-Three_span_0.5_0.5_0.5_strip.png").exists()


def test_sample_boundary_sheet(workspace, tmp_path):
    _, _, ckpt_path = workspace
    out = tmp_path / "sheet.png"
    rc = main(["sample-boundary", "--ckpt", str(ckpt_path), "--magnitude", "4",
               "--out", str(out)])
    assert rc == 0
    sheet = load_png(out)
    # 2^3 = 8 corners for the tiny 3-d latent: 2 rows x 2-col grid of 32x32 + borders
    assert sheet.shape[0] >= 64 and sheet.shape[1] >= 64


def test_hist_scatter_exports(workspace, tmp_path):
    root, data, ckpt_path = workspace
    emb = tmp_path / "emb.csv"
    main(["embed", "--ckpt", str(ckpt_path), "--data", str(data / "manifest.json"),
          "--out", str(emb), "--per-label", "10"])

    hist_csv = tmp_path / "h.csv"
    hist_png_path = tmp_path / "h.png"
    rc = main(["hist", "--embeddings", str(emb), "--dim", "1", "--bins", "16",
               "--out", str(hist_csv), "--png", str(hist_png_path)])
    assert rc == 0
    lines = hist_csv.read_text().strip().splitlines()
    assert lines[0] == "bin_left,bin_right,count,normal_ref"
    assert sum(int(l.split(",")[2]) for l in lines[1:]) == 10
    assert hist_png_path.exists()

    sc_csv = tmp_path / "s.csv"
    rc = main(["scatter", "--embeddings", str(emb), "--dims", "0", "2",
               "--out", str(sc_csv)])
    assert rc == 0
    assert len(sc_csv.read_text().strip().splitlines()) == 11


def test_export_montage(workspace, tmp_path):
    _, data, _ = workspace
    out = tmp_path / "sheet.png"
    rc = main(["export-montage", "--images", str(data / "Beam Three_span"),
               "--glob", "00_*.png", "--rows", "8", "--cols", "10",
               "--out", str(out)])
    assert rc == 0
    sheet = load_png(out)
    assert sheet.shape == (8 * 129, 10 * 513)


def test_export_artifacts(workspace, tmp_path):
    _, data, ckpt_path = workspace
    out = tmp_path / "artifacts"
    rc = main(["export-artifacts", "--ckpt", str(ckpt_path), "--data",
               str(data / "manifest.json"), "--out", str(out),
               "--scatter-dims", "0", "1", "--per-label", "10"])
    assert rc == 0
    # Tiny checkpoint has latent_dim 3: one histogram per dimension.
    assert sorted(p.name for p in out.glob("hist_dim*.csv")) == [
        "hist_dim0.csv", "hist_dim1.csv", "hist_dim2.csv"]
    assert (out / "scatter_dim0_1.csv").exists()
    assert (out / "embeddings.csv").exists()
