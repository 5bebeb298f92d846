"""Grayscale PNG round-tripping and montage sheets."""

from __future__ import annotations

import numpy as np
from PIL import Image

from .errors import ShapeError

MONTAGE_SEPARATOR = 0.5  # gray grid lines; cell interiors stay untouched


def save_png(image: np.ndarray, path) -> None:
    """Write a float image in [0, 1] as 8-bit grayscale PNG."""
    arr = np.round(np.clip(image, 0.0, 1.0) * 255.0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def png_bytes(image: np.ndarray) -> bytes:
    import io

    buf = io.BytesIO()
    arr = np.round(np.clip(image, 0.0, 1.0) * 255.0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def load_png(path_or_file) -> np.ndarray:
    """Read an 8-bit grayscale PNG into float32 [0, 1]."""
    with Image.open(path_or_file) as im:
        if im.mode != "L":
            im = im.convert("L")
        return np.asarray(im, dtype=np.float32) / 255.0


def montage(images, rows: int, cols: int, cell_border_px: int = 1) -> np.ndarray:
    """Tile images row-major into a grid sheet with separator lines.

    Cells are (h + border) x (w + border) with the border on the right and
    bottom edges; unfilled cells stay black.
    """
    images = list(images)
    if len(images) > rows * cols:
        raise ValueError(f"{len(images)} images do not fit a {rows}x{cols} grid")
    if not images:
        raise ValueError("montage needs at least one image")
    h, w = images[0].shape
    for i, img in enumerate(images):
        if img.shape != (h, w):
            raise ShapeError(f"image {i} has shape {img.shape}, expected {(h, w)}",
                             dim="cell")
    b = cell_border_px
    sheet = np.zeros((rows * (h + b), cols * (w + b)), dtype=np.float32)
    if b > 0:
        for i in range(rows):
            sheet[i * (h + b) + h : (i + 1) * (h + b), :] = MONTAGE_SEPARATOR
        for j in range(cols):
            sheet[:, j * (w + b) + w : (j + 1) * (w + b)] = MONTAGE_SEPARATOR
    for idx, img in enumerate(images):
        i, j = divmod(idx, cols)
        sheet[i * (h + b) : i * (h + b) + h, j * (w + b) : j * (w + b) + w] = img
    return sheet
