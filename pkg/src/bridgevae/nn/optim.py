"""RMSProp parameter updates."""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from .layers import Param


class RMSProp:
    """Root-mean-square propagation over a fixed parameter list.

    Keeps one squared-gradient accumulator per trainable parameter:

        a <- rho * a + (1 - rho) * g**2
        p <- p - lr * g / (sqrt(a) + eps)

    Non-trainable parameters (batch-norm moving statistics) are never touched.
    """

    def __init__(self, params: list[Param], lr: float = 0.001, rho: float = 0.9,
                 eps: float = 1e-7):
        self.lr = lr
        self.rho = rho
        self.eps = eps
        self.params = [p for p in params if p.trainable]
        self.acc = [np.zeros_like(p.value) for p in self.params]

    def step(self):
        """Apply one update from the gradients currently on the parameters."""
        for p, a in zip(self.params, self.acc):
            if p.grad is None:
                continue
            if p.grad.shape != p.value.shape:
                raise ShapeError(
                    f"{p.name}: gradient shape {p.grad.shape} != parameter shape "
                    f"{p.value.shape}", dim="parameter")
            g = p.grad
            a *= self.rho
            a += (1.0 - self.rho) * g * g
            p.value -= (self.lr * g / (np.sqrt(a) + self.eps)).astype(p.value.dtype)

    def clear_grads(self):
        for p in self.params:
            p.grad = None
