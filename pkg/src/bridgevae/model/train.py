"""Mini-batch VAE training with RMSProp."""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass

import numpy as np

from ..nn import RMSProp
from ..rng import Rng
from .losses import (
    LossBreakdown,
    kl_loss,
    kl_loss_grads,
    reconstruction_loss,
    reconstruction_loss_grad,
    reparameterize,
    total_loss,
)
from .profile import ArchitectureProfile
from .vae import VAE

log = logging.getLogger(__name__)


@dataclass
class TrainConfig:
    epochs: int = 100
    batch_size: int = 32
    lr: float = 0.001
    rho: float = 0.9
    opt_eps: float = 1e-7
    kl_coefficient: float = 0.001
    seed: int = 0


def train(images: np.ndarray, profile: ArchitectureProfile,
          config: TrainConfig) -> tuple[VAE, list[LossBreakdown]]:
    """Train a fresh VAE on an image array of shape (N, H, W, 1) in [0, 1].

    Single sequential loop: weight init, then per epoch a shuffled pass of
    mini-batches (encode, sample, decode, losses, backprop, RMSProp step).
    All randomness flows through one seeded stream, so a given (images,
    profile, config) is exactly reproducible.
    """
    p = profile
    if images.ndim != 4 or images.shape[1:] != (p.image_height, p.image_width, 1):
        raise ValueError(
            f"images shape {images.shape} does not match profile "
            f"(N, {p.image_height}, {p.image_width}, 1)")
    images = images.astype(np.float32, copy=False)

    rng = Rng(config.seed)
    vae = VAE(profile, rng=rng)
    opt = RMSProp(vae.params(), lr=config.lr, rho=config.rho, eps=config.opt_eps)
    coef = config.kl_coefficient
    n = images.shape[0]
    history: list[LossBreakdown] = []

    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n)
        sums = np.zeros(2)
        for b, start in enumerate(range(0, n, config.batch_size)):
            batch = images[order[start:start + config.batch_size]]
            z_mean, z_log_var = vae.encoder.forward(batch, mode="train", rng=rng)
            eps = rng.normal(z_mean.shape).astype(np.float32)
            z = reparameterize(z_mean, z_log_var, eps).astype(np.float32)
            y_hat = vae.decoder.forward(z, mode="train", rng=rng)

            rec = reconstruction_loss(batch, y_hat)
            kl = kl_loss(z_mean, z_log_var)
            if not (np.isfinite(rec) and np.isfinite(kl)):
                raise RuntimeError(
                    f"non-finite loss at epoch {epoch}, batch {b}: rec={rec}, kl={kl}")

            d_z = vae.decoder.backward(reconstruction_loss_grad(batch, y_hat))
            d_mean_kl, d_log_var_kl = kl_loss_grads(z_mean, z_log_var)
            d_mean = d_z + coef * d_mean_kl
            d_log_var = d_z * eps * 0.5 * np.exp(0.5 * z_log_var) + coef * d_log_var_kl
            vae.encoder.backward(d_mean.astype(np.float32), d_log_var.astype(np.float32))
            opt.step()
            opt.clear_grads()
            sums += np.array([rec, kl]) * batch.shape[0]

        rec_mean, kl_mean = sums / n
        breakdown = total_loss(rec_mean, kl_mean, coef)
        history.append(breakdown)
        log.info("epoch %d/%d rec=%.5f kl=%.5f total=%.5f",
                 epoch, config.epochs, breakdown.reconstruction_loss,
                 breakdown.kl_loss, breakdown.total_loss)

    return vae, history


def write_history_csv(history: list[LossBreakdown], path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["epoch", "reconstruction_loss", "kl_loss", "total_loss"])
        for i, h in enumerate(history, start=1):
            writer.writerow([i, f"{h.reconstruction_loss:.8f}", f"{h.kl_loss:.8f}",
                             f"{h.total_loss:.8f}"])


def history_metadata(history: list[LossBreakdown], config: TrainConfig) -> dict:
    """Training metadata block embedded in checkpoints."""
    return {
        "epochs": config.epochs,
        "batch_size": config.batch_size,
        "lr": config.lr,
        "kl_coefficient": config.kl_coefficient,
        "seed": config.seed,
        "loss_history": {
            "reconstruction_loss": [h.reconstruction_loss for h in history],
            "kl_loss": [h.kl_loss for h in history],
            "total_loss": [h.total_loss for h in history],
        },
    }
