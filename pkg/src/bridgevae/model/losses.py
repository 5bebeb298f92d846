"""VAE losses: per-pixel binary cross-entropy, per-dimension KL, weighted sum.

Reductions follow the per-pixel / per-dimension mean convention (then a mean
over the batch), not the sum-over-pixels convention; the regularizer enters
the total multiplied by a small coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeError

# Clamp for predicted pixel values inside the logarithms.
BCE_EPSILON = 2e-7


@dataclass
class LossBreakdown:
    reconstruction_loss: float
    kl_loss: float
    total_loss: float
    coefficient: float


def reconstruction_loss(y: np.ndarray, y_hat: np.ndarray) -> float:
    """Mean binary cross-entropy between target and reconstructed pixels."""
    if y.shape != y_hat.shape:
        raise ShapeError(f"target {y.shape} vs reconstruction {y_hat.shape}", dim="pixels")
    yc = np.clip(y_hat, BCE_EPSILON, 1.0 - BCE_EPSILON)
    return float(np.mean(-(y * np.log(yc) + (1.0 - y) * np.log1p(-yc))))


def reconstruction_loss_grad(y: np.ndarray, y_hat: np.ndarray) -> np.ndarray:
    """Gradient of the mean BCE w.r.t. y_hat (zero where the clamp is active)."""
    yc = np.clip(y_hat, BCE_EPSILON, 1.0 - BCE_EPSILON)
    inside = (y_hat > BCE_EPSILON) & (y_hat < 1.0 - BCE_EPSILON)
    g = (-y / yc + (1.0 - y) / (1.0 - yc)) / y.size
    return np.where(inside, g, 0.0).astype(y_hat.dtype)


def kl_loss(z_mean: np.ndarray, z_log_var: np.ndarray) -> float:
    """Mean KL divergence from the standard normal prior, per dimension."""
    if z_mean.shape != z_log_var.shape:
        raise ShapeError(f"z_mean {z_mean.shape} vs z_log_var {z_log_var.shape}", dim="latent")
    terms = -0.5 * (1.0 + z_log_var - np.square(z_mean) - np.exp(z_log_var))
    return float(np.mean(terms))


def kl_loss_grads(z_mean: np.ndarray, z_log_var: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Gradients of the mean KL w.r.t. z_mean and z_log_var."""
    n = z_mean.size
    d_mean = z_mean / n
    d_log_var = -0.5 * (1.0 - np.exp(z_log_var)) / n
    return d_mean.astype(z_mean.dtype), d_log_var.astype(z_log_var.dtype)


def total_loss(rec: float, kl: float, coefficient: float = 0.001) -> LossBreakdown:
    """Weighted sum of reconstruction and regularization losses."""
    return LossBreakdown(
        reconstruction_loss=rec,
        kl_loss=kl,
        total_loss=rec + coefficient * kl,
        coefficient=coefficient,
    )


def reparameterize(z_mean: np.ndarray, z_log_var: np.ndarray, epsilon: np.ndarray) -> np.ndarray:
    """Draw z = z_mean + exp(0.5 * z_log_var) * epsilon."""
    z_mean = np.asarray(z_mean)
    z_log_var = np.asarray(z_log_var)
    epsilon = np.asarray(epsilon)
    if not (z_mean.shape == z_log_var.shape == epsilon.shape):
        raise ShapeError(
            f"z_mean {z_mean.shape}, z_log_var {z_log_var.shape}, epsilon {epsilon.shape} "
            "must agree", dim="latent")
    return z_mean + np.exp(0.5 * z_log_var) * epsilon
