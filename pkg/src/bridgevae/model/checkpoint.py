"""Versioned binary checkpoint container.

Layout (all integers little-endian):

    magic       8 bytes  b"BVAECKPT"
    version     u32      currently 1
    json_len    u32
    json        UTF-8: {"profile": {...}, "metadata": {...}}
    n_arrays    u32
    per array:
        name_len  u16, name UTF-8
        dtype     u8   (0 = float32)
        ndim      u8
        shape     ndim x u32
        payload   row-major little-endian float32

The checkpoint id is the first 12 hex digits of the SHA-256 over the array
section, so identical parameters always yield the same id.
"""

from __future__ import annotations

import hashlib
import io
import json
import struct

import numpy as np

from ..errors import (
    CheckpointMagicError,
    CheckpointShapeError,
    CheckpointTruncatedError,
    CheckpointVersionError,
)
from .profile import ArchitectureProfile
from .vae import VAE

MAGIC = b"BVAECKPT"
VERSION = 1
_DTYPE_F32 = 0


class ModelCheckpoint:
    """Profile + named parameter arrays + training metadata."""

    def __init__(self, profile: ArchitectureProfile, params: dict[str, np.ndarray],
                 metadata: dict | None = None):
        self.profile = profile
        self.params = params
        self.metadata = metadata or {}

    @classmethod
    def from_vae(cls, vae: VAE, metadata: dict | None = None) -> "ModelCheckpoint":
        params = {p.name: p.value.astype(np.float32) for p in vae.params()}
        return cls(vae.profile, params, metadata)

    def build(self) -> VAE:
        """Reconstruct an inference-ready model from the stored arrays."""
        vae = VAE(self.profile)
        expected = {p.name for p in vae.params()}
        stored = set(self.params)
        if expected != stored:
            missing = sorted(expected - stored)
            extra = sorted(stored - expected)
            raise CheckpointShapeError(
                f"parameter names disagree with profile (missing={missing}, extra={extra})")
        for p in vae.params():
            arr = self.params[p.name]
            if arr.shape != p.value.shape:
                raise CheckpointShapeError(
                    f"{p.name}: stored shape {arr.shape} != profile shape {p.value.shape}")
            p.value = arr.copy()
        for side in (vae.encoder, vae.decoder):
            for block in side.blocks:
                block[1].initialized = True  # moving stats came from the file
        return vae

    def param_totals(self) -> dict:
        return ModelCheckpoint._totals_from(self.params)

    @staticmethod
    def _totals_from(params: dict[str, np.ndarray]) -> dict:
        out = {}
        for side in ("enc", "dec"):
            names = [n for n in params if n.startswith(side + "/")]
            total = sum(params[n].size for n in names)
            frozen = sum(params[n].size for n in names if n.endswith(("moving_mean", "moving_var")))
            key = "encoder" if side == "enc" else "decoder"
            out[key] = {"total": total, "trainable": total - frozen, "non_trainable": frozen}
        return out

    def _array_section(self) -> bytes:
        buf = io.BytesIO()
        buf.write(struct.pack("<I", len(self.params)))
        for name in sorted(self.params):
            arr = np.ascontiguousarray(self.params[name], dtype="<f4")
            nb = name.encode("utf-8")
            buf.write(struct.pack("<H", len(nb)))
            buf.write(nb)
            buf.write(struct.pack("<BB", _DTYPE_F32, arr.ndim))
            buf.write(struct.pack(f"<{arr.ndim}I", *arr.shape))
            buf.write(arr.tobytes())
        return buf.getvalue()

    @property
    def checkpoint_id(self) -> str:
        return hashlib.sha256(self._array_section()).hexdigest()[:12]

    def save(self, path) -> None:
        body = json.dumps({"profile": self.profile.to_dict(), "metadata": self.metadata},
                          sort_keys=True).encode("utf-8")
        with open(path, "wb") as f:
            f.write(MAGIC)
            f.write(struct.pack("<I", VERSION))
            f.write(struct.pack("<I", len(body)))
            f.write(body)
            f.write(self._array_section())


def _read_exact(f, n: int, what: str) -> bytes:
    data = f.read(n)
    if len(data) != n:
        raise CheckpointTruncatedError(f"unexpected end of file while reading {what}")
    return data


def load_checkpoint(path) -> ModelCheckpoint:
    with open(path, "rb") as f:
        magic = f.read(len(MAGIC))
        if magic != MAGIC:
            raise CheckpointMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
        (version,) = struct.unpack("<I", _read_exact(f, 4, "version"))
        if version != VERSION:
            raise CheckpointVersionError(f"unsupported version {version}, expected {VERSION}")
        (json_len,) = struct.unpack("<I", _read_exact(f, 4, "header length"))
        header = json.loads(_read_exact(f, json_len, "header"))
        profile = ArchitectureProfile.from_dict(header["profile"])
        (n_arrays,) = struct.unpack("<I", _read_exact(f, 4, "array count"))
        params: dict[str, np.ndarray] = {}
        for _ in range(n_arrays):
            (name_len,) = struct.unpack("<H", _read_exact(f, 2, "name length"))
            name = _read_exact(f, name_len, "name").decode("utf-8")
            dtype_tag, ndim = struct.unpack("<BB", _read_exact(f, 2, "dtype/ndim"))
            if dtype_tag != _DTYPE_F32:
                raise CheckpointVersionError(f"{name}: unknown dtype tag {dtype_tag}")
            shape = struct.unpack(f"<{ndim}I", _read_exact(f, 4 * ndim, "shape"))
            count = int(np.prod(shape)) if ndim else 1
            payload = _read_exact(f, 4 * count, f"array {name}")
            params[name] = np.frombuffer(payload, dtype="<f4").reshape(shape).copy()
    return ModelCheckpoint(profile, params, header.get("metadata", {}))
