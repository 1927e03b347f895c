"""Random instances for property checks: astic matrices and lattice vectors.

The doubly-0-astic generator draws sparse non-positive weights, forces a
zero into every row, then repairs zero-deficient columns by raising their
largest entry to 0 (adding an entry when the column is empty).  The repair
step may add zeros to rows that already had one, which is harmless.
"""
from __future__ import annotations

import numpy as np

from .lattice import LatticeConfig
from .matrix import MaxPlusMatrix, mp_mat_join

DEFAULT_WEIGHT_SPAN = 13.0


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _draw_weights(rng, size, low, integral):
    if integral:
        return rng.integers(int(low), 1, size=size).astype(np.float64)
    return rng.uniform(low, 0.0, size=size)


def random_row_0_astic(
    n: int,
    rng=None,
    density: float = 0.5,
    low: float = -DEFAULT_WEIGHT_SPAN,
    integral: bool = True,
    keep_row_hole: bool = True,
) -> MaxPlusMatrix:
    """Random row-0-astic matrix (columns unconstrained).

    With ``keep_row_hole`` every row keeps at least one absent column, so a
    perturbed row can always be exposed by an impulse probe.
    """
    rng = _rng(rng)
    if n < 2 and keep_row_hole:
        raise ValueError("a guaranteed row hole needs n >= 2")
    dense = np.full((n, n), -np.inf)
    for i in range(n):
        cols = np.flatnonzero(rng.random(n) < density)
        if cols.size == 0:
            cols = np.array([rng.integers(n)])
        max_cols = n - 1 if keep_row_hole else n
        if cols.size > max_cols:
            cols = rng.choice(cols, size=max_cols, replace=False)
        dense[i, cols] = _draw_weights(rng, cols.size, low, integral)
        dense[i, rng.choice(cols)] = 0.0
    return MaxPlusMatrix.from_dense(dense)


def random_doubly_0_astic(
    n: int,
    rng=None,
    density: float = 0.5,
    low: float = -DEFAULT_WEIGHT_SPAN,
    integral: bool = True,
) -> MaxPlusMatrix:
    """Random doubly-0-astic matrix (row zeros forced, columns repaired)."""
    rng = _rng(rng)
    dense = random_row_0_astic(
        n, rng, density=density, low=low, integral=integral, keep_row_hole=False
    ).to_dense()
    col_max = dense.max(axis=0)
    for j in np.flatnonzero(col_max != 0.0):
        if col_max[j] == -np.inf:
            dense[rng.integers(n), j] = 0.0
        else:
            dense[int(np.argmax(dense[:, j])), j] = 0.0
    return MaxPlusMatrix.from_dense(dense)


def random_symmetric_doubly_0_astic(
    n: int,
    rng=None,
    density: float = 0.5,
    low: float = -DEFAULT_WEIGHT_SPAN,
    integral: bool = True,
) -> MaxPlusMatrix:
    """Symmetric doubly-0-astic matrix: ``W ∨ W^T`` of a doubly-0-astic draw
    (the join keeps every row and column supremum at 0)."""
    w = random_doubly_0_astic(n, rng, density=density, low=low, integral=integral)
    return mp_mat_join(w, w.transpose())


def random_cmw(
    n: int,
    rng=None,
    density: float = 0.5,
    low: float = -DEFAULT_WEIGHT_SPAN,
    integral: bool = True,
) -> MaxPlusMatrix:
    """Random conservative-weights matrix: zero diagonal, non-positive rest."""
    rng = _rng(rng)
    dense = np.full((n, n), -np.inf)
    mask = rng.random((n, n)) < density
    dense[mask] = _draw_weights(rng, int(mask.sum()), low, integral)
    np.fill_diagonal(dense, 0.0)
    return MaxPlusMatrix.from_dense(dense)


def random_lattice_vector(cfg: LatticeConfig, rng=None, integral: bool = False) -> np.ndarray:
    rng = _rng(rng)
    if integral:
        return rng.integers(int(np.ceil(cfg.a)), int(np.floor(cfg.b)) + 1, size=cfg.n).astype(
            np.float64
        )
    return rng.uniform(cfg.a, cfg.b, size=cfg.n)
