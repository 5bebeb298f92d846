"""Shared test helpers and fixtures."""

import numpy as np
import pytest

from bridgevae.model.profile import ArchitectureProfile
from bridgevae.model.train import TrainConfig, train
from bridgevae.rng import Rng


def fd_gradient(f, x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central finite differences of scalar f w.r.t. every element of x."""
    g = np.zeros_like(x, dtype=np.float64)
    flat = x.reshape(-1)
    gf = g.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + h
        fp = f()
        flat[i] = orig - h
        fm = f()
        flat[i] = orig
        gf[i] = (fp - fm) / (2.0 * h)
    return g


def rel_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """Max absolute difference normalized by the gradient scale."""
    scale = max(np.abs(numeric).max(), np.abs(analytic).max(), 1e-10)
    return float(np.abs(analytic - numeric).max() / scale)


def tiny_profile() -> ArchitectureProfile:
    """Smallest legal profile: fast to build, fast to differentiate."""
    return ArchitectureProfile(
        image_height=32, image_width=32, latent_dim=3,
        channels=[4, 4, 6, 6, 8], dropout_rate=0.0)


def check_layer_gradients(make_layer, x_shape, mode="train", seed=0,
                          dropout_rng_seed=None, tol=1e-4):
    """Compare a layer's backward() against central differences.

    The scalar objective is sum(forward(x) * w) for a fixed random w, at
    double precision on tensors of at most ~1e3 elements. Checks the input
    gradient and every trainable parameter gradient.
    """
    rng = Rng(seed)
    layer = make_layer()
    x = rng.normal(x_shape)

    def run():
        fwd_rng = Rng(dropout_rng_seed) if dropout_rng_seed is not None else None
        return layer.forward(x, mode=mode, rng=fwd_rng)

    w = rng.normal(run().shape)

    def objective():
        return float((run() * w).sum())

    run()
    dx = layer.backward(w.copy())
    dx_fd = fd_gradient(objective, x)
    assert rel_error(dx, dx_fd) < tol, f"input gradient of {layer.name}"

    for p in layer.params():
        if not p.trainable:
            continue
        run()
        layer.backward(w.copy())
        analytic = p.grad.copy()
        numeric = fd_gradient(objective, p.value)
        assert rel_error(analytic, numeric) < tol, f"{p.name} gradient"


@pytest.fixture(scope="session")
def tiny_trained():
    """A minimally trained tiny model plus its training images."""
    profile = tiny_profile()
    rng = Rng(99)
    images = (rng.uniform((24, 32, 32, 1)) > 0.8).astype(np.float32)
    config = TrainConfig(epochs=2, batch_size=8, seed=5)
    vae, history = train(images, profile, config)
    return vae, history, images, config
