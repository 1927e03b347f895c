"""Bounded-lattice scaffolding for max-plus signal processing.

Signals are length-``n`` vectors with entries in ``[a, b]``, ordered
componentwise.  Scalars are plain floats, with ``-inf`` playing the role of
the max-plus zero (absorbing for ``+``, neutral for ``max``).  ``+inf`` never
enters stored data; it can only appear transiently when an erosion kernel
hits an empty column, and callers clamp it away immediately.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

NEG_INF = float("-inf")

#: Tolerance used for comparisons against 0 whenever any operand carries
#: non-integral weights.  Integral data is compared exactly.
FLOAT_ATOL = 1e-9


def as_vector(x) -> np.ndarray:
    """Coerce ``x`` to a 1-D float64 array without copying when possible."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class LatticeConfig:
    """The complete lattice ``[a, b]^n``.

    Parameters
    ----------
    a, b : float
        Smallest and largest admissible signal values, ``0 <= a < b``.
    n : int
        Signal length (pixel count for images, flattened column-major).
    """

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not (0 <= self.a < self.b):
            raise ValueError(f"need 0 <= a < b, got a={self.a}, b={self.b}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def prune_threshold(self) -> float:
        """``a - b``: entries at or below this never influence operators."""
        return self.a - self.b

    def bottom(self) -> np.ndarray:
        return np.full(self.n, self.a, dtype=np.float64)

    def top(self) -> np.ndarray:
        return np.full(self.n, self.b, dtype=np.float64)

    def contains(self, x, atol: float = 0.0) -> bool:
        v = as_vector(x)
        return v.size == self.n and bool(
            np.all(v >= self.a - atol) and np.all(v <= self.b + atol)
        )

    def validate_vector(self, x, atol: float = 0.0) -> np.ndarray:
        """Return ``x`` as an array, or raise if it is not in the lattice."""
        v = as_vector(x)
        if v.size != self.n:
            raise DimensionError(f"vector has length {v.size}, lattice needs {self.n}")
        if not (np.all(v >= self.a - atol) and np.all(v <= self.b + atol)):
            bad = int(np.argmax((v < self.a - atol) | (v > self.b + atol)))
            raise ValueError(
                f"entry {bad} = {v[bad]} outside the lattice [{self.a}, {self.b}]"
            )
        return v

    def clip(self, x) -> np.ndarray:
        """Clamp a vector into ``[a, b]`` (used by adjoint clamping only)."""
        return np.clip(as_vector(x), self.a, self.b)


def impulse(i: int, cfg: LatticeConfig) -> np.ndarray:
    """Impulse vector: ``b`` at index ``i`` (0-based), ``a`` elsewhere."""
    if not 0 <= i < cfg.n:
        raise IndexError(f"impulse index {i} out of range for n={cfg.n}")
    e = cfg.bottom()
    e[i] = cfg.b
    return e


def complement(x, cfg: LatticeConfig) -> np.ndarray:
    """Lattice complement ``b - x + a``; an order-reversing involution."""
    return cfg.b - cfg.validate_vector(x) + cfg.a


def scalar_shift(lam: float, x) -> np.ndarray:
    """Max-plus scalar product: add ``lam`` to every entry (``-inf`` absorbs)."""
    return lam + as_vector(x)


def lattice_leq(x, y) -> bool:
    """Componentwise (Pareto) order."""
    u, v = as_vector(x), as_vector(y)
    if u.size != v.size:
        raise DimensionError(f"length mismatch: {u.size} vs {v.size}")
    return bool(np.all(u <= v))


def vectors_equal(u, v, atol: float = 0.0) -> bool:
    """Entrywise equality that treats ``-inf`` entries as matching exactly."""
    u, v = as_vector(u), as_vector(v)
    if u.size != v.size:
        return False
    same = u == v  # covers matching infinities
    if atol > 0.0:
        with np.errstate(invalid="ignore"):
            same = same | (np.abs(u - v) <= atol)
    return bool(np.all(same))
