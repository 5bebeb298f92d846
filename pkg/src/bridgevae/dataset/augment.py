"""Geometric augmentation: tiny rotation plus anisotropic scaling about center."""

from __future__ import annotations

import math
from dataclasses import dataclass

import cv2
import numpy as np

ROTATIONS_DEG = (-0.3, 0.0, 0.3)
HSCALES = tuple(np.linspace(1.0, 1.05, 5))
VSCALES = tuple(np.linspace(1.0, 1.1, 5))


@dataclass(frozen=True)
class AugmentParams:
    rotation_deg: float
    hscale: float
    vscale: float

    @property
    def is_identity(self) -> bool:
        return self.rotation_deg == 0.0 and self.hscale == 1.0 and self.vscale == 1.0


def augment_grid() -> list[AugmentParams]:
    """The 3 x 5 x 5 = 75 combinations, rotation-major order."""
    return [AugmentParams(r, hs, vs) for r in ROTATIONS_DEG for hs in HSCALES for vs in VSCALES]


def augment(image: np.ndarray, p: AugmentParams) -> np.ndarray:
    """Rotate about the image center, then scale horizontally/vertically
    about the center; bilinear interpolation, zeros outside, no translation.

    The identity parameter set returns the input unchanged (bit-exact).
    """
    h, w = image.shape
    if p.is_identity:
        return image.copy()
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
    theta = math.radians(p.rotation_deg)
    c, s = math.cos(theta), math.sin(theta)
    # Forward map: scale(hscale, vscale) o rotate(theta), both about center.
    a = np.array([[p.hscale * c, -p.hscale * s],
                  [p.vscale * s, p.vscale * c]])
    t = np.array([cx, cy]) - a @ np.array([cx, cy])
    m = np.hstack([a, t[:, None]]).astype(np.float64)
    return cv2.warpAffine(
        image, m, (w, h), flags=cv2.INTER_LINEAR,
        borderMode=cv2.BORDER_CONSTANT, borderValue=0.0)
