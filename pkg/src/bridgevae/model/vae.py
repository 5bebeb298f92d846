"""Encoder/decoder assembly and inference entry points.

Encoder: five stride-2 conv blocks (conv -> batch norm -> relu -> dropout),
flatten, then two parallel linear heads for z_mean and z_log_var.

Decoder: linear map from the latent vector to the bottleneck volume, reshape,
four stride-2 transposed-conv blocks (convT -> batch norm -> relu -> dropout),
and a final stride-2 transposed conv with a sigmoid.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from ..nn import (
    BatchNorm,
    Conv2D,
    ConvTranspose2D,
    Dense,
    Dropout,
    Flatten,
    ReLU,
    Reshape,
    Sigmoid,
)
from ..rng import Rng
from .profile import ArchitectureProfile

DEFAULT_BATCH = 32


class Encoder:
    def __init__(self, profile: ArchitectureProfile, rng: Rng | None = None, dtype=np.float32):
        self.profile = profile
        p = profile
        self.blocks = []
        in_ch = 1
        for i, ch in enumerate(p.channels):
            self.blocks.append([
                Conv2D(in_ch, ch, name=f"enc/conv{i}", rng=rng, dtype=dtype),
                BatchNorm(ch, eps=p.bn_eps, momentum=p.bn_momentum, name=f"enc/bn{i}", dtype=dtype),
                ReLU(name=f"enc/relu{i}"),
                Dropout(p.dropout_rate, name=f"enc/drop{i}"),
            ])
            in_ch = ch
        self.flatten = Flatten(name="enc/flatten")
        self.head_mean = Dense(p.flat_dim, p.latent_dim, name="enc/z_mean", rng=rng, dtype=dtype)
        self.head_log_var = Dense(p.flat_dim, p.latent_dim, name="enc/z_log_var", rng=rng, dtype=dtype)

    def layers(self):
        for block in self.blocks:
            yield from block
        yield self.flatten
        yield self.head_mean
        yield self.head_log_var

    def params(self):
        return [q for layer in self.layers() for q in layer.params()]

    def forward(self, x: np.ndarray, mode: str = "train", rng: Rng | None = None):
        p = self.profile
        if x.ndim != 4 or x.shape[1:] != (p.image_height, p.image_width, 1):
            raise ShapeError(
                f"encoder expects (N, {p.image_height}, {p.image_width}, 1), got {x.shape}",
                dim="image")
        h = x
        for block in self.blocks:
            for layer in block:
                h = layer.forward(h, mode=mode, rng=rng)
        h = self.flatten.forward(h, mode=mode)
        return self.head_mean.forward(h), self.head_log_var.forward(h)

    def backward(self, d_mean: np.ndarray, d_log_var: np.ndarray) -> np.ndarray:
        g = self.head_mean.backward(d_mean) + self.head_log_var.backward(d_log_var)
        g = self.flatten.backward(g)
        for block in reversed(self.blocks):
            for layer in reversed(block):
                g = layer.backward(g)
        return g


class Decoder:
    def __init__(self, profile: ArchitectureProfile, rng: Rng | None = None, dtype=np.float32):
        self.profile = profile
        p = profile
        bh, bw = p.bottleneck_hw
        self.dense = Dense(p.latent_dim, p.flat_dim, name="dec/dense", rng=rng, dtype=dtype)
        self.reshape = Reshape((bh, bw, p.channels[-1]), name="dec/reshape")
        self.blocks = []
        in_ch = p.channels[-1]
        up_channels = list(reversed(p.channels[:-1]))  # e.g. [128, 128, 128, 64]
        for i, ch in enumerate(up_channels):
            self.blocks.append([
                ConvTranspose2D(in_ch, ch, name=f"dec/ct{i}", rng=rng, dtype=dtype),
                BatchNorm(ch, eps=p.bn_eps, momentum=p.bn_momentum, name=f"dec/bn{i}", dtype=dtype),
                ReLU(name=f"dec/relu{i}"),
                Dropout(p.dropout_rate, name=f"dec/drop{i}"),
            ])
            in_ch = ch
        self.out_conv = ConvTranspose2D(in_ch, 1, name="dec/ct_out", rng=rng, dtype=dtype)
        self.out_act = Sigmoid(name="dec/sigmoid")

    def layers(self):
        yield self.dense
        yield self.reshape
        for block in self.blocks:
            yield from block
        yield self.out_conv
        yield self.out_act

    def params(self):
        return [q for layer in self.layers() for q in layer.params()]

    def forward(self, z: np.ndarray, mode: str = "train", rng: Rng | None = None) -> np.ndarray:
        p = self.profile
        if z.ndim != 2 or z.shape[1] != p.latent_dim:
            raise ShapeError(
                f"decoder expects (N, {p.latent_dim}) latent input, got {z.shape}", dim="latent")
        h = self.dense.forward(z)
        h = self.reshape.forward(h)
        for block in self.blocks:
            for layer in block:
                h = layer.forward(h, mode=mode, rng=rng)
        h = self.out_conv.forward(h)
        return self.out_act.forward(h)

    def backward(self, grad: np.ndarray) -> np.ndarray:
        g = self.out_act.backward(grad)
        g = self.out_conv.backward(g)
        for block in reversed(self.blocks):
            for layer in reversed(block):
                g = layer.backward(g)
        g = self.reshape.backward(g)
        return self.dense.backward(g)


def _count(params) -> int:
    return int(sum(p.value.size for p in params))


class VAE:
    """Paired encoder/decoder over a shared profile."""

    def __init__(self, profile: ArchitectureProfile, rng: Rng | None = None, dtype=np.float32):
        self.profile = profile
        self.encoder = Encoder(profile, rng=rng, dtype=dtype)
        self.decoder = Decoder(profile, rng=rng, dtype=dtype)

    def params(self):
        return self.encoder.params() + self.decoder.params()

    def param_totals(self) -> dict:
        """Total/trainable/non-trainable counts per side."""
        out = {}
        for side, params in (("encoder", self.encoder.params()),
                             ("decoder", self.decoder.params())):
            trainable = _count(p for p in params if p.trainable)
            total = _count(params)
            out[side] = {
                "total": total,
                "trainable": trainable,
                "non_trainable": total - trainable,
            }
        return out

    def encoder_summary(self) -> list[dict]:
        """Per-layer (name, output shape, param count) rows for the encoder."""
        p = self.profile
        rows = [{"name": "input", "output_shape": (None, p.image_height, p.image_width, 1),
                 "params": 0}]
        h, w = p.image_height, p.image_width
        for i, block in enumerate(self.blocks_of(self.encoder)):
            h, w = -(-h // 2), -(-w // 2)
            shape = (None, h, w, p.channels[i])
            conv, bn = block[0], block[1]
            rows.append({"name": f"conv2d_{i}", "output_shape": shape,
                         "params": _count(conv.params())})
            rows.append({"name": f"batch_normalization_{i}", "output_shape": shape,
                         "params": _count(bn.params())})
            rows.append({"name": f"activation_{i}", "output_shape": shape, "params": 0})
            rows.append({"name": f"dropout_{i}", "output_shape": shape, "params": 0})
        rows.append({"name": "flatten", "output_shape": (None, p.flat_dim), "params": 0})
        rows.append({"name": "dense_mean", "output_shape": (None, p.latent_dim),
                     "params": _count(self.encoder.head_mean.params())})
        rows.append({"name": "dense_log_var", "output_shape": (None, p.latent_dim),
                     "params": _count(self.encoder.head_log_var.params())})
        return rows

    def decoder_summary(self) -> list[dict]:
        """Per-layer rows for the decoder."""
        p = self.profile
        bh, bw = p.bottleneck_hw
        rows = [
            {"name": "input", "output_shape": (None, p.latent_dim), "params": 0},
            {"name": "dense", "output_shape": (None, p.flat_dim),
             "params": _count(self.decoder.dense.params())},
            {"name": "reshape", "output_shape": (None, bh, bw, p.channels[-1]), "params": 0},
        ]
        h, w = bh, bw
        for i, block in enumerate(self.blocks_of(self.decoder)):
            h, w = h * 2, w * 2
            ct, bn = block[0], block[1]
            shape = (None, h, w, ct.bias.value.shape[0])
            rows.append({"name": f"conv2d_transpose_{i}", "output_shape": shape,
                         "params": _count(ct.params())})
            rows.append({"name": f"batch_normalization_{i}", "output_shape": shape,
                         "params": _count(bn.params())})
            rows.append({"name": f"activation_{i}", "output_shape": shape, "params": 0})
            rows.append({"name": f"dropout_{i}", "output_shape": shape, "params": 0})
        rows.append({"name": "conv2d_transpose_out",
                     "output_shape": (None, p.image_height, p.image_width, 1),
                     "params": _count(self.decoder.out_conv.params())})
        return rows

    @staticmethod
    def blocks_of(side):
        return side.blocks

    # Inference entry points: moving statistics, no dropout, no sampling.

    def encode(self, images: np.ndarray, batch_size: int = DEFAULT_BATCH):
        """Map images to (z_mean, z_log_var), inference mode, batched."""
        means, log_vars = [], []
        for start in range(0, images.shape[0], batch_size):
            zm, zlv = self.encoder.forward(images[start:start + batch_size], mode="infer")
            means.append(zm)
            log_vars.append(zlv)
        return np.concatenate(means), np.concatenate(log_vars)

    def decode(self, z: np.ndarray, batch_size: int = DEFAULT_BATCH) -> np.ndarray:
        """Map latent vectors to images, inference mode, batched."""
        outs = []
        for start in range(0, z.shape[0], batch_size):
            outs.append(self.decoder.forward(z[start:start + batch_size], mode="infer"))
        return np.concatenate(outs)
