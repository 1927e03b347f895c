"""Iterated and integrated operators, their openings, and granulometries.

For a doubly-0-astic ``W`` the ``p``-fold dilation is the single dilation by
``W^p``, and the sup-integrated dilation up to ``p`` is the dilation by
``S_p = W ∨ W^2 ∨ ... ∨ W^p``.  Caching those matrices turns whole
granulometries into a handful of sparse products plus two mat-vec calls per
evaluated opening.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .asticity import _require_doubly
from .errors import DimensionError
from .lattice import LatticeConfig
from .matrix import (
    MaxPlusMatrix,
    mp_mat_join,
    mp_mat_mat,
    mp_mat_vec,
    mp_mat_vec_min,
    prune_keep_above,
    zero_tolerance,
)
from .operators import CheckResult
from .sampling import _rng, random_lattice_vector


class IteratedFamily:
    """Cached powers ``W^k`` and integrals ``S_k`` of one doubly-0-astic base.

    Levels are built lazily, whole levels at a time, under a lock: readers
    never observe a partially built level.  After construction every query
    is pure.  With ``prune=True`` each product is thinned at ``a - b``,
    which provably leaves all operators unchanged and bounds fill-in at
    image scale.
    """

    def __init__(
        self,
        matrix: MaxPlusMatrix,
        cfg: LatticeConfig,
        p_max: int | None = None,
        prune: bool = True,
    ):
        if cfg.n != matrix.n:
            raise DimensionError(f"matrix is {matrix.n}x{matrix.n}, lattice has n={cfg.n}")
        _require_doubly(matrix, "IteratedFamily")
        if p_max is not None and (int(p_max) != p_max or p_max < 1):
            raise ValueError(f"p_max must be a positive integer, got {p_max}")
        self.base = matrix
        self.cfg = cfg
        self.p_max = None if p_max is None else int(p_max)
        self.prune = prune
        self._powers = [matrix]
        self._integrals = [matrix]
        self._lock = threading.Lock()

    def _check_p(self, p: int) -> int:
        if int(p) != p or p < 1:
            raise ValueError(f"p must be a positive integer, got {p}")
        if self.p_max is not None and p > self.p_max:
            raise ValueError(f"p={p} exceeds the family bound p_max={self.p_max}")
        return int(p)

    def _grow(self, p: int) -> None:
        with self._lock:
            while len(self._powers) < p:
                nxt = mp_mat_mat(self._powers[-1], self.base)
                if self.prune:
                    nxt = prune_keep_above(nxt, self.cfg.prune_threshold)
                self._powers.append(nxt)
                self._integrals.append(mp_mat_join(self._integrals[-1], nxt))

    def power(self, p: int) -> MaxPlusMatrix:
        """``W^p`` (pruned at ``a - b`` when pruning is on)."""
        p = self._check_p(p)
        if len(self._powers) < p:
            self._grow(p)
        return self._powers[p - 1]

    def integral(self, p: int) -> MaxPlusMatrix:
        """``S_p = W ∨ ... ∨ W^p``."""
        p = self._check_p(p)
        if len(self._integrals) < p:
            self._grow(p)
        return self._integrals[p - 1]


def iterate_dilate(fam: IteratedFamily, p: int, x) -> np.ndarray:
    """``p``-fold dilation, evaluated as one product with the cached power."""
    return mp_mat_vec(fam.power(p), np.asarray(x, dtype=np.float64))


def iterate_erode(fam: IteratedFamily, p: int, x) -> np.ndarray:
    """``p``-fold erosion via the cached power's columns."""
    return mp_mat_vec_min(fam.power(p).transpose(), np.asarray(x, dtype=np.float64))


def integral_dilate(fam: IteratedFamily, p: int, x) -> np.ndarray:
    """Supremum of the first ``p`` iterated dilations, via ``S_p``."""
    return mp_mat_vec(fam.integral(p), np.asarray(x, dtype=np.float64))


def integral_erode(fam: IteratedFamily, p: int, x) -> np.ndarray:
    """Infimum of the first ``p`` iterated erosions, via ``S_p``."""
    return mp_mat_vec_min(fam.integral(p).transpose(), np.asarray(x, dtype=np.float64))


def gamma_opening(fam: IteratedFamily, p: int, x) -> np.ndarray:
    """Opening of the iterated adjunction: ``p``-fold dilate after erode."""
    return iterate_dilate(fam, p, iterate_erode(fam, p, x))


def big_g_opening(fam: IteratedFamily, p: int, x) -> np.ndarray:
    """Opening of the integrated adjunction: ``S_p`` dilate after erode."""
    return integral_dilate(fam, p, integral_erode(fam, p, x))


@dataclass(frozen=True)
class GranulometryReport:
    """Sampled granulometry evidence; truthy iff no violation was found."""

    ok: bool
    p_max: int
    trials: int
    violations: tuple = field(default=(), repr=False)

    def __bool__(self) -> bool:
        return self.ok


def check_granulometry(
    fam: IteratedFamily, p_max: int, trials: int = 50, seed=None
) -> GranulometryReport:
    """Sample the granulometry laws up to ``p_max``.

    For each drawn ``x`` and every ``p < p_max`` this verifies that both
    opening families decrease with scale and that the coarser integrated
    opening absorbs the finer one (``G_p ∘ G_{p+1} = G_{p+1}``).
    """
    if p_max < 2:
        raise ValueError("p_max must be >= 2")
    tol = zero_tolerance(fam.base)
    rng = _rng(seed)
    integral = fam.base.is_integral()
    violations = []
    for t in range(trials):
        x = random_lattice_vector(fam.cfg, rng, integral=integral)
        gammas = [gamma_opening(fam, p, x) for p in range(1, p_max + 1)]
        bigs = [big_g_opening(fam, p, x) for p in range(1, p_max + 1)]
        for p in range(p_max - 1):
            if np.any(gammas[p + 1] > gammas[p] + tol):
                violations.append((t, p + 2, "gamma increased"))
            if np.any(bigs[p + 1] > bigs[p] + tol):
                violations.append((t, p + 2, "G increased"))
            absorbed = big_g_opening(fam, p + 1, bigs[p + 1])
            if np.any(np.abs(absorbed - bigs[p + 1]) > tol):
                violations.append((t, p + 2, "absorption failed"))
    return GranulometryReport(
        ok=not violations, p_max=p_max, trials=trials, violations=tuple(violations)
    )
