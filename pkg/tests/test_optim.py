"""RMSProp update rule."""

import math

import numpy as np
import pytest

from bridgevae.errors import ShapeError
from bridgevae.nn import Param, RMSProp


def test_zero_gradient_leaves_params_unchanged():
    p = Param("w", np.array([1.0, -2.0]))
    opt = RMSProp([p])
    p.grad = np.zeros(2)
    opt.step()
    assert (p.value == np.array([1.0, -2.0])).all()


def test_hand_computed_single_step():
    p = Param("w", np.array([1.0]))
    opt = RMSProp([p], lr=0.001, rho=0.9, eps=1e-7)
    p.grad = np.array([1.0])
    opt.step()
    expected = 1.0 - 0.001 / (math.sqrt(0.1) + 1e-7)
    assert abs(opt.acc[0][0] - 0.1) < 1e-12
    assert abs(p.value[0] - expected) < 1e-12
    assert abs(p.value[0] - 0.996838) < 1e-6


def test_constant_gradient_decreases_monotonically():
    p = Param("w", np.array([5.0]))
    opt = RMSProp([p])
    values = [p.value[0]]
    for _ in range(4):
        p.grad = np.array([1.0])
        opt.step()
        values.append(p.value[0])
    assert all(b < a for a, b in zip(values, values[1:]))


def test_non_trainable_untouched():
    frozen = Param("stats", np.array([3.0]), trainable=False)
    opt = RMSProp([frozen])
    frozen.grad = np.array([1.0])
    opt.step()
    assert frozen.value[0] == 3.0
    assert opt.params == []


def test_gradient_shape_mismatch_raises():
    p = Param("w", np.zeros((2, 2)))
    opt = RMSProp([p])
    p.grad = np.zeros(3)
    with pytest.raises(ShapeError, match="w"):
        opt.step()
