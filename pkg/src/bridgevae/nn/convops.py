"""Strided 2-D convolution primitives with "same" padding.

Layout is NHWC for activations and (kh, kw, Cin, Cout) for kernels. With a
kernel K, ``conv2d`` maps Cin -> Cout channels and divides the spatial size by
the stride (ceil). ``conv2d_input_grad`` is its exact adjoint and doubles as
the forward pass of the transposed convolution, which multiplies the spatial
size by the stride.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError


def same_pad(size: int, k: int, stride: int) -> tuple[int, int, int]:
    """Output size plus (before, after) padding for "same" convolution."""
    out = -(-size // stride)
    total = max((out - 1) * stride + k - size, 0)
    return out, total // 2, total - total // 2


def _gather_cols(xp: np.ndarray, kh: int, kw: int, ho: int, wo: int, s: int) -> np.ndarray:
    """(N, Hp, Wp, C) padded input -> (N, Ho, Wo, kh, kw, C) window gather."""
    n, _, _, c = xp.shape
    cols = np.empty((n, ho, wo, kh, kw, c), dtype=xp.dtype)
    for di in range(kh):
        for dj in range(kw):
            cols[:, :, :, di, dj, :] = xp[
                :, di : di + (ho - 1) * s + 1 : s, dj : dj + (wo - 1) * s + 1 : s, :
            ]
    return cols


def conv2d(x: np.ndarray, kernel: np.ndarray, bias: np.ndarray | None, stride: int) -> np.ndarray:
    """Cross-correlation with stride and "same" padding."""
    if x.ndim != 4:
        raise ShapeError(f"conv2d expects NHWC input, got ndim={x.ndim}", dim="input")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    n, h, w, cin = x.shape
    kh, kw, kcin, cout = kernel.shape
    if kcin != cin:
        raise ShapeError(
            f"kernel expects {kcin} input channels, input has {cin}", dim="channels"
        )
    ho, pt, pb = same_pad(h, kh, stride)
    wo, pl, pr = same_pad(w, kw, stride)
    xp = np.pad(x, ((0, 0), (pt, pb), (pl, pr), (0, 0)))
    cols = _gather_cols(xp, kh, kw, ho, wo, stride)
    y = cols.reshape(n * ho * wo, kh * kw * cin) @ kernel.reshape(kh * kw * cin, cout)
    y = y.reshape(n, ho, wo, cout)
    if bias is not None:
        if bias.shape != (cout,):
            raise ShapeError(
                f"bias shape {bias.shape} does not match {cout} output channels",
                dim="channels",
            )
        y = y + bias
    return y


def conv2d_input_grad(
    g: np.ndarray, kernel: np.ndarray, stride: int, in_hw: tuple[int, int]
) -> np.ndarray:
    """Adjoint of conv2d with respect to its input.

    ``g`` lives in conv2d's output space (N, Ho, Wo, Cout); the result lives in
    the input space (N, H, W, Cin) where (H, W) = ``in_hw``.
    """
    n, ho, wo, cout = g.shape
    kh, kw, cin, kcout = kernel.shape
    if kcout != cout:
        raise ShapeError(
            f"kernel expects {kcout} output channels, gradient has {cout}", dim="channels"
        )
    h, w = in_hw
    eho, pt, pb = same_pad(h, kh, stride)
    ewo, pl, pr = same_pad(w, kw, stride)
    if (eho, ewo) != (ho, wo):
        raise ShapeError(
            f"gradient spatial {(ho, wo)} does not match conv output {(eho, ewo)}",
            dim="spatial",
        )
    dcols = g.reshape(n * ho * wo, cout) @ kernel.reshape(kh * kw * cin, cout).T
    dcols = dcols.reshape(n, ho, wo, kh, kw, cin)
    dxp = np.zeros((n, h + pt + pb, w + pl + pr, cin), dtype=g.dtype)
    for di in range(kh):
        for dj in range(kw):
            dxp[
                :, di : di + (ho - 1) * stride + 1 : stride, dj : dj + (wo - 1) * stride + 1 : stride, :
            ] += dcols[:, :, :, di, dj, :]
    return dxp[:, pt : pt + h, pl : pl + w, :]


def conv2d_kernel_grad(
    x: np.ndarray, g: np.ndarray, stride: int, kh: int, kw: int
) -> np.ndarray:
    """Adjoint of conv2d with respect to its kernel."""
    n, h, w, cin = x.shape
    gn, ho, wo, cout = g.shape
    if gn != n:
        raise ShapeError(f"batch {gn} != {n}", dim="batch")
    eho, pt, pb = same_pad(h, kh, stride)
    ewo, pl, pr = same_pad(w, kw, stride)
    if (eho, ewo) != (ho, wo):
        raise ShapeError(
            f"gradient spatial {(ho, wo)} does not match conv output {(eho, ewo)}",
            dim="spatial",
        )
    xp = np.pad(x, ((0, 0), (pt, pb), (pl, pr), (0, 0)))
    cols = _gather_cols(xp, kh, kw, ho, wo, stride)
    dk = cols.reshape(n * ho * wo, kh * kw * cin).T @ g.reshape(n * ho * wo, cout)
    return dk.reshape(kh, kw, cin, cout)
