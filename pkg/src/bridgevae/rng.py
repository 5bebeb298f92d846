"""Seedable counter-based pseudo-random generator.

The whole pipeline (weight init, dropout masks, reparameterization noise,
shuffling) draws from this one generator so that runs are reproducible from a
single integer seed, independent of platform RNG libraries.

Stream definition (all arithmetic modulo 2**64):

    out[i] = mix64(seed + (counter + i + 1) * 0x9E3779B97F4A7C15)

where ``mix64`` is the splitmix64 finalizer:

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

Uniform doubles take the top 53 bits: ``(out >> 11) * 2**-53`` giving [0, 1).
Normal deviates use the Box-Muller transform on consecutive uniform pairs
(u1, u2), with u1 mapped to (0, 1]:

    r = sqrt(-2 * ln(1 - u1)),  z0 = r * cos(2*pi*u2),  z1 = r * sin(2*pi*u2)

An independent implementation following this note reproduces every stream
bit-for-bit.
"""

from __future__ import annotations

import math

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


class Rng:
    """Deterministic random stream identified by (seed, counter)."""

    def __init__(self, seed: int, counter: int = 0):
        self.seed = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
        self.counter = np.uint64(counter)

    def _raw(self, n: int) -> np.ndarray:
        """Next n raw 64-bit words of the stream."""
        idx = self.counter + np.arange(1, n + 1, dtype=np.uint64)
        self.counter = (self.counter + np.uint64(n)) & _MASK
        return _mix64((self.seed + idx * _GOLDEN) & _MASK)

    def uniform(self, shape=()) -> np.ndarray:
        """Uniform float64 samples in [0, 1)."""
        n = int(np.prod(shape)) if shape else 1
        out = (self._raw(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        return out.reshape(shape) if shape else out[0]

    def normal(self, shape=()) -> np.ndarray:
        """Standard normal samples via Box-Muller."""
        n = int(np.prod(shape)) if shape else 1
        pairs = (n + 1) // 2
        u = (self._raw(2 * pairs) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        u1, u2 = u[:pairs], u[pairs:]
        r = np.sqrt(-2.0 * np.log1p(-u1))
        theta = (2.0 * math.pi) * u2
        z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:n]
        return z.reshape(shape) if shape else z[0]

    def permutation(self, n: int) -> np.ndarray:
        """Random permutation of range(n) via stable argsort of raw keys."""
        return np.argsort(self._raw(n), kind="stable")

    def spawn(self, stream: int) -> "Rng":
        """Independent child stream derived from this generator's seed."""
        base = np.array([stream], dtype=np.uint64)
        child_seed = _mix64((self.seed + base * _MIX2) & _MASK)[0]
        return Rng(int(child_seed))
