"""Checkpoint container: round trip and corruption handling."""

import numpy as np
import pytest

from conftest import tiny_profile

from bridgevae.errors import (
    CheckpointMagicError,
    CheckpointShapeError,
    CheckpointTruncatedError,
    CheckpointVersionError,
)
from bridgevae.model import ArchitectureProfile, ModelCheckpoint, VAE, load_checkpoint
from bridgevae.rng import Rng


@pytest.fixture()
def saved(tmp_path):
    vae = VAE(tiny_profile(), rng=Rng(8))
    # One train-mode pass so the moving statistics are non-default.
    vae.encoder.forward(Rng(9).uniform((2, 32, 32, 1)).astype(np.float32), mode="train", rng=Rng(10))
    ckpt = ModelCheckpoint.from_vae(vae, metadata={"epochs": 0, "seed": 8})
    path = tmp_path / "model.ckpt"
    ckpt.save(path)
    return ckpt, path


def test_round_trip_bit_exact(saved):
    ckpt, path = saved
    loaded = load_checkpoint(path)
    assert loaded.profile.to_dict() == ckpt.profile.to_dict()
    assert loaded.metadata == ckpt.metadata
    assert set(loaded.params) == set(ckpt.params)
    for name, arr in ckpt.params.items():
        assert arr.dtype == np.float32
        assert (loaded.params[name] == arr).all(), name
    assert loaded.checkpoint_id == ckpt.checkpoint_id


def test_build_restores_inference(saved):
    ckpt, path = saved
    vae = load_checkpoint(path).build()
    z = np.zeros((1, vae.profile.latent_dim), np.float32)
    out = vae.decode(z)
    assert out.shape == (1, 32, 32, 1)


def test_bad_magic_rejected(saved, tmp_path):
    _, path = saved
    data = bytearray(path.read_bytes())
    data[0] ^= 0xFF
    bad = tmp_path / "bad_magic.ckpt"
    bad.write_bytes(bytes(data))
    with pytest.raises(CheckpointMagicError):
        load_checkpoint(bad)


def test_bad_version_rejected(saved, tmp_path):
    _, path = saved
    data = bytearray(path.read_bytes())
    data[8] = 99
    bad = tmp_path / "bad_version.ckpt"
    bad.write_bytes(bytes(data))
    with pytest.raises(CheckpointVersionError):
        load_checkpoint(bad)


def test_truncated_rejected(saved, tmp_path):
    _, path = saved
    data = path.read_bytes()
    bad = tmp_path / "short.ckpt"
    bad.write_bytes(data[: len(data) // 2])
    with pytest.raises(CheckpointTruncatedError):
        load_checkpoint(bad)


def test_shape_disagreement_rejected(saved):
    ckpt, path = saved
    loaded = load_checkpoint(path)
    name = next(iter(loaded.params))
    loaded.params[name] = np.zeros((1, 2, 3), np.float32)
    with pytest.raises(CheckpointShapeError):
        loaded.build()


def test_missing_array_rejected(saved):
    _, path = saved
    loaded = load_checkpoint(path)
    loaded.params.pop(next(iter(loaded.params)))
    with pytest.raises(CheckpointShapeError, match="missing"):
        loaded.build()


def test_full_profile_checkpoint_totals():
    ckpt = ModelCheckpoint.from_vae(VAE(ArchitectureProfile.full(), rng=Rng(0)))
    totals = ckpt.param_totals()
    assert totals["encoder"] == {"total": 650640, "trainable": 649488, "non_trainable": 1152}
    assert totals["decoder"] == {"total": 592641, "trainable": 591745, "non_trainable": 896}
