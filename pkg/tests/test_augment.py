"""Geometric augmentation behavior."""

import numpy as np

from bridgevae.dataset import AugmentParams, augment, augment_grid, render_bridge, spec_for


def test_grid_has_75_distinct_combinations():
    grid = augment_grid()
    assert len(grid) == 75
    assert len(set(grid)) == 75
    rotations = {p.rotation_deg for p in grid}
    assert rotations == {-0.3, 0.0, 0.3}
    assert all(1.0 <= p.hscale <= 1.05 for p in grid)
    assert all(1.0 <= p.vscale <= 1.1 for p in grid)


def test_identity_is_bit_exact_noop():
    img = render_bridge(spec_for("Arch Top_bear", 5))
    out = augment(img, AugmentParams(0.0, 1.0, 1.0))
    assert (out == img).all()


def test_vertical_scale_grows_bar():
    img = np.zeros((128, 512), np.float32)
    img[59:69, :] = 1.0  # 10 px horizontal bar through the center
    out = augment(img, AugmentParams(0.0, 1.0, 1.1))
    thickness = (out[:, 256] > 0.5).sum()
    assert abs(thickness - 11) <= 1


def test_horizontal_scale_grows_bar():
    img = np.zeros((128, 512), np.float32)
    img[:, 236:276] = 1.0  # 40 px vertical bar
    out = augment(img, AugmentParams(0.0, 1.05, 1.0))
    width = (out[64, :] > 0.5).sum()
    assert abs(width - 42) <= 1


def test_tiny_rotation_preserves_mass():
    img = render_bridge(spec_for("Suspension Vertical_sling", 8))
    for deg in (-0.3, 0.3):
        out = augment(img, AugmentParams(deg, 1.0, 1.0))
        assert abs(out.sum() - img.sum()) / img.sum() < 0.02


def test_output_shape_and_zero_fill():
    img = np.ones((128, 512), np.float32)
    out = augment(img, AugmentParams(0.3, 1.0, 1.0))
    assert out.shape == (128, 512)
    assert out.min() >= 0.0
