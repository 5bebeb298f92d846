"""Neural-network layers with explicit forward and backward passes.

Each layer caches what its backward pass needs during ``forward`` and exposes
vector-Jacobian products through ``backward``: given the gradient of a scalar
loss with respect to the layer output, it writes parameter gradients onto its
``Param`` objects and returns the gradient with respect to the layer input.
Calling ``backward`` without a preceding ``forward`` raises.

Activation layout is NHWC throughout; dtype follows the input (float32 for
training, float64 in gradient-check tests).
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError, UninitializedStatsError
from ..rng import Rng
from .convops import conv2d, conv2d_input_grad, conv2d_kernel_grad, same_pad


class Param:
    """Named parameter array with a trainable flag and gradient slot."""

    def __init__(self, name: str, value: np.ndarray, trainable: bool = True):
        self.name = name
        self.value = value
        self.trainable = trainable
        self.grad: np.ndarray | None = None

    def __repr__(self):
        return f"Param({self.name}, shape={self.value.shape}, trainable={self.trainable})"


def glorot_uniform(shape, fan_in: int, fan_out: int, rng: Rng, dtype=np.float32) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return ((rng.uniform(shape) * 2.0 - 1.0) * limit).astype(dtype)


class Layer:
    """Base class: parameter listing plus the forward/backward contract."""

    name = "layer"

    def params(self) -> list[Param]:
        return []

    def forward(self, x: np.ndarray, mode: str = "train", rng: Rng | None = None) -> np.ndarray:
        raise NotImplementedError

    def backward(self, grad: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _require_cache(self, cache):
        if cache is None:
            raise RuntimeError(f"{self.name}: backward called before forward")
        return cache


class Conv2D(Layer):
    """Strided "same" convolution, kernel (kh, kw, Cin, Cout), bias on."""

    def __init__(self, in_ch: int, out_ch: int, kernel_size: int = 3, stride: int = 2,
                 name: str = "conv", rng: Rng | None = None, dtype=np.float32):
        self.name = name
        self.stride = stride
        k = kernel_size
        fan_in, fan_out = k * k * in_ch, k * k * out_ch
        kval = (glorot_uniform((k, k, in_ch, out_ch), fan_in, fan_out, rng, dtype)
                if rng is not None else np.zeros((k, k, in_ch, out_ch), dtype))
        self.kernel = Param(f"{name}/kernel", kval)
        self.bias = Param(f"{name}/bias", np.zeros(out_ch, dtype))
        self._x = None

    def params(self):
        return [self.kernel, self.bias]

    def forward(self, x, mode="train", rng=None):
        self._x = x
        return conv2d(x, self.kernel.value, self.bias.value, self.stride)

    def backward(self, grad):
        x = self._require_cache(self._x)
        kh, kw = self.kernel.value.shape[:2]
        self.kernel.grad = conv2d_kernel_grad(x, grad, self.stride, kh, kw)
        self.bias.grad = grad.sum(axis=(0, 1, 2))
        return conv2d_input_grad(grad, self.kernel.value, self.stride, x.shape[1:3])


class ConvTranspose2D(Layer):
    """Stride-s transposed convolution: exact adjoint of Conv2D.

    The kernel is stored in conv layout (kh, kw, out_ch, in_ch), i.e. the
    kernel of the Conv2D whose adjoint this layer computes, so a shared kernel
    satisfies <conv2d(x; K), y> == <x, conv_transpose2d(y; K)>.
    """

    def __init__(self, in_ch: int, out_ch: int, kernel_size: int = 3, stride: int = 2,
                 name: str = "convT", rng: Rng | None = None, dtype=np.float32):
        self.name = name
        self.stride = stride
        k = kernel_size
        fan_in, fan_out = k * k * in_ch, k * k * out_ch
        kval = (glorot_uniform((k, k, out_ch, in_ch), fan_in, fan_out, rng, dtype)
                if rng is not None else np.zeros((k, k, out_ch, in_ch), dtype))
        self.kernel = Param(f"{name}/kernel", kval)
        self.bias = Param(f"{name}/bias", np.zeros(out_ch, dtype))
        self._x = None

    def params(self):
        return [self.kernel, self.bias]

    def forward(self, x, mode="train", rng=None):
        if x.shape[3] != self.kernel.value.shape[3]:
            raise ShapeError(
                f"{self.name}: input has {x.shape[3]} channels, "
                f"kernel expects {self.kernel.value.shape[3]}", dim="channels")
        self._x = x
        n, h, w, _ = x.shape
        out_hw = (h * self.stride, w * self.stride)
        y = conv2d_input_grad(x, self.kernel.value, self.stride, out_hw)
        return y + self.bias.value

    def backward(self, grad):
        x = self._require_cache(self._x)
        kh, kw = self.kernel.value.shape[:2]
        # ct(x; K) = A_K^T x, so dK of <g, ct(x)> is the kernel grad of
        # conv2d evaluated at input g with upstream x.
        self.kernel.grad = conv2d_kernel_grad(grad, x, self.stride, kh, kw)
        self.bias.grad = grad.sum(axis=(0, 1, 2))
        return conv2d(grad, self.kernel.value, None, self.stride)


class BatchNorm(Layer):
    """Per-channel batch normalization over all axes but the last.

    Train mode normalizes with batch statistics and updates the moving
    averages; inference mode requires statistics to exist (at least one train
    step, or a loaded checkpoint).
    """

    def __init__(self, channels: int, eps: float = 1e-3, momentum: float = 0.99,
                 name: str = "bn", dtype=np.float32):
        self.name = name
        self.eps = eps
        self.momentum = momentum
        self.gamma = Param(f"{name}/gamma", np.ones(channels, dtype))
        self.beta = Param(f"{name}/beta", np.zeros(channels, dtype))
        self.moving_mean = Param(f"{name}/moving_mean", np.zeros(channels, dtype), trainable=False)
        self.moving_var = Param(f"{name}/moving_var", np.ones(channels, dtype), trainable=False)
        self.initialized = False
        self._cache = None

    def params(self):
        return [self.gamma, self.beta, self.moving_mean, self.moving_var]

    def forward(self, x, mode="train", rng=None):
        c = x.shape[-1]
        if self.gamma.value.shape[0] != c:
            raise ShapeError(
                f"{self.name}: got {c} channels, expected {self.gamma.value.shape[0]}",
                dim="channels")
        axes = tuple(range(x.ndim - 1))
        if mode == "train":
            mean = x.mean(axis=axes)
            var = x.var(axis=axes)
            inv_std = 1.0 / np.sqrt(var + self.eps)
            xhat = (x - mean) * inv_std
            m = self.momentum
            self.moving_mean.value = (m * self.moving_mean.value
                                      + (1.0 - m) * mean).astype(self.moving_mean.value.dtype)
            self.moving_var.value = (m * self.moving_var.value
                                     + (1.0 - m) * var).astype(self.moving_var.value.dtype)
            self.initialized = True
            self._cache = ("train", xhat, inv_std, int(np.prod([x.shape[a] for a in axes])))
        else:
            if not self.initialized:
                raise UninitializedStatsError(
                    f"{self.name}: inference before any statistics exist")
            inv_std = 1.0 / np.sqrt(self.moving_var.value + self.eps)
            xhat = (x - self.moving_mean.value) * inv_std
            self._cache = ("infer", xhat, inv_std, None)
        return self.gamma.value * xhat + self.beta.value

    def backward(self, grad):
        mode, xhat, inv_std, m = self._require_cache(self._cache)
        axes = tuple(range(grad.ndim - 1))
        self.gamma.grad = (grad * xhat).sum(axis=axes)
        self.beta.grad = grad.sum(axis=axes)
        dxhat = grad * self.gamma.value
        if mode == "infer":
            return dxhat * inv_std
        # Train mode: batch mean/var depend on x.
        return (inv_std / m) * (
            m * dxhat - dxhat.sum(axis=axes) - xhat * (dxhat * xhat).sum(axis=axes)
        )


class Dropout(Layer):
    """Inverted dropout: scales survivors at train time, identity at inference."""

    def __init__(self, rate: float, name: str = "dropout"):
        if not 0.0 <= rate < 1.0:
            raise ValueError(f"dropout rate must be in [0, 1), got {rate}")
        self.name = name
        self.rate = rate
        self._scaled_mask = None

    def forward(self, x, mode="train", rng=None):
        if mode != "train" or self.rate == 0.0:
            self._scaled_mask = 1.0
            return x
        if rng is None:
            raise ValueError(f"{self.name}: train mode needs an rng")
        keep = rng.uniform(x.shape) >= self.rate
        self._scaled_mask = keep.astype(x.dtype) / np.asarray(1.0 - self.rate, x.dtype)
        return x * self._scaled_mask

    def backward(self, grad):
        mask = self._require_cache(self._scaled_mask)
        return grad * mask


class Dense(Layer):
    """Affine map (N, Din) -> (N, Dout), no activation."""

    def __init__(self, in_dim: int, out_dim: int, name: str = "dense",
                 rng: Rng | None = None, dtype=np.float32):
        self.name = name
        wval = (glorot_uniform((in_dim, out_dim), in_dim, out_dim, rng, dtype)
                if rng is not None else np.zeros((in_dim, out_dim), dtype))
        self.weight = Param(f"{name}/weight", wval)
        self.bias = Param(f"{name}/bias", np.zeros(out_dim, dtype))
        self._x = None

    def params(self):
        return [self.weight, self.bias]

    def forward(self, x, mode="train", rng=None):
        if x.ndim != 2 or x.shape[1] != self.weight.value.shape[0]:
            raise ShapeError(
                f"{self.name}: input shape {x.shape} does not match weight rows "
                f"{self.weight.value.shape[0]}", dim="features")
        self._x = x
        return x @ self.weight.value + self.bias.value

    def backward(self, grad):
        x = self._require_cache(self._x)
        self.weight.grad = x.T @ grad
        self.bias.grad = grad.sum(axis=0)
        return grad @ self.weight.value.T


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0)


def sigmoid(x: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


class ReLU(Layer):
    def __init__(self, name: str = "relu"):
        self.name = name
        self._x = None

    def forward(self, x, mode="train", rng=None):
        self._x = x
        return relu(x)

    def backward(self, grad):
        x = self._require_cache(self._x)
        return grad * (x > 0)


class Sigmoid(Layer):
    def __init__(self, name: str = "sigmoid"):
        self.name = name
        self._y = None

    def forward(self, x, mode="train", rng=None):
        self._y = sigmoid(x)
        return self._y

    def backward(self, grad):
        y = self._require_cache(self._y)
        return grad * y * (1.0 - y)


class Flatten(Layer):
    """(N, H, W, C) -> (N, H*W*C)."""

    def __init__(self, name: str = "flatten"):
        self.name = name
        self._shape = None

    def forward(self, x, mode="train", rng=None):
        self._shape = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, grad):
        shape = self._require_cache(self._shape)
        return grad.reshape(shape)


class Reshape(Layer):
    """(N, D) -> (N, *target)."""

    def __init__(self, target: tuple, name: str = "reshape"):
        self.name = name
        self.target = tuple(target)
        self._shape = None

    def forward(self, x, mode="train", rng=None):
        self._shape = x.shape
        return x.reshape((x.shape[0],) + self.target)

    def backward(self, grad):
        shape = self._require_cache(self._shape)
        return grad.reshape(shape)


def activation(x: np.ndarray, kind: str) -> np.ndarray:
    """Elementwise activation by name ("relu" or "sigmoid")."""
    if kind == "relu":
        return relu(x)
    if kind == "sigmoid":
        return sigmoid(x)
    raise ValueError(f"unknown activation kind: {kind!r}")


__all__ = [
    "Param", "Layer", "Conv2D", "ConvTranspose2D", "BatchNorm", "Dropout",
    "Dense", "ReLU", "Sigmoid", "Flatten", "Reshape",
    "relu", "sigmoid", "activation", "glorot_uniform", "same_pad",
]
