"""Minimal tensor-layer toolkit: forward ops, exact VJPs, RMSProp."""

from .convops import conv2d, conv2d_input_grad, conv2d_kernel_grad, same_pad
from .layers import (
    BatchNorm,
    Conv2D,
    ConvTranspose2D,
    Dense,
    Dropout,
    Flatten,
    Layer,
    Param,
    ReLU,
    Reshape,
    Sigmoid,
    activation,
    glorot_uniform,
    relu,
    sigmoid,
)
from .optim import RMSProp

__all__ = [
    "conv2d", "conv2d_input_grad", "conv2d_kernel_grad", "same_pad",
    "BatchNorm", "Conv2D", "ConvTranspose2D", "Dense", "Dropout", "Flatten",
    "Layer", "Param", "ReLU", "Reshape", "Sigmoid",
    "activation", "glorot_uniform", "relu", "sigmoid", "RMSProp",
]
