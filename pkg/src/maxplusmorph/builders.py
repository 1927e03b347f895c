"""Matrix construction from structuring functions and guide images.

Column ``j`` of a representing matrix is the structuring function planted
at pixel ``j``: translation-invariant operators come from one offset/weight
table stamped across the grid, adaptive ones from per-edge weights read off
a guide image.  Both constructions keep the diagonal at zero, so the
results are CMW (hence doubly-0-astic) by design, and the grid boundary is
clipped rather than wrapped by default for exactly that reason.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asticity import classify
from .errors import DimensionError
from .lattice import LatticeConfig
from .matrix import MaxPlusMatrix, _from_coo_max


def _as_offset(off) -> tuple[int, ...]:
    if np.isscalar(off):
        return (int(off),)
    t = tuple(int(v) for v in off)
    if len(t) not in (1, 2):
        raise ValueError(f"offsets must be 1-D or 2-D, got {off!r}")
    return t


@dataclass(frozen=True)
class StructuringFunction:
    """Displacement/weight table with a mandatory zero at the origin.

    The zero origin weight guarantees every column keeps a zero even at the
    grid boundary, which is what keeps the built matrices doubly-0-astic.
    """

    offsets: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        offsets = tuple(_as_offset(o) for o in self.offsets)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "weights", weights)
        if len(offsets) != len(weights):
            raise ValueError("offsets and weights must have equal length")
        if len(set(offsets)) != len(offsets):
            raise ValueError("duplicate offset")
        dims = {len(o) for o in offsets}
        if len(dims) > 1:
            raise ValueError("offsets mix 1-D and 2-D displacements")
        if any(w > 0 for w in weights):
            raise ValueError("structuring weights must be non-positive")
        origin = (0,) * next(iter(dims)) if offsets else None
        if origin not in offsets or weights[offsets.index(origin)] != 0.0:
            raise ValueError("origin offset must be present with weight 0")

    @property
    def ndim(self) -> int:
        return len(self.offsets[0])

    @classmethod
    def flat(cls, offsets) -> "StructuringFunction":
        """Flat (all-zero-weight) structuring function over given offsets."""
        offsets = tuple(offsets)
        return cls(offsets, (0.0,) * len(offsets))


def _grid_shape(shape) -> tuple[int, ...]:
    if np.isscalar(shape):
        return (int(shape),)
    t = tuple(int(s) for s in shape)
    if len(t) not in (1, 2) or any(s < 1 for s in t):
        raise ValueError(f"shape must be a positive length or (rows, cols), got {shape}")
    return t


def build_matrix_from_se(
    se: StructuringFunction,
    shape,
    cfg: LatticeConfig,
    boundary: str = "clip",
) -> MaxPlusMatrix:
    """Stamp a structuring function across a 1-D or 2-D grid.

    ``w[i, j]`` is the weight at displacement ``i - j`` (grid coordinates,
    column-major flattening for 2-D).  ``boundary='clip'`` drops
    out-of-grid displacements; ``'wrap'`` folds them around periodically.
    The result is checked to be CMW.
    """
    if boundary not in ("clip", "wrap"):
        raise ValueError("boundary must be 'clip' or 'wrap'")
    dims = _grid_shape(shape)
    if se.ndim != len(dims):
        raise ValueError(f"{se.ndim}-D structuring function on a {len(dims)}-D grid")
    n = int(np.prod(dims))
    if cfg.n != n:
        raise DimensionError(f"grid has {n} cells but lattice has n={cfg.n}")
    rows_out: list[np.ndarray] = []
    cols_out: list[np.ndarray] = []
    vals_out: list[np.ndarray] = []
    if len(dims) == 1:
        j = np.arange(n)
        for (off,), w in zip(se.offsets, se.weights):
            i = j + off
            if boundary == "wrap":
                i = i % n
                keep = np.ones(n, dtype=bool)
            else:
                keep = (i >= 0) & (i < n)
            rows_out.append(i[keep])
            cols_out.append(j[keep])
            vals_out.append(np.full(int(keep.sum()), w))
    else:
        nrow, ncol = dims
        r, c = np.meshgrid(np.arange(nrow), np.arange(ncol), indexing="ij")
        r, c = r.ravel(order="F"), c.ravel(order="F")
        j = r + c * nrow  # column-major cell index
        for (dr, dc), w in zip(se.offsets, se.weights):
            ri, ci = r + dr, c + dc
            if boundary == "wrap":
                ri, ci = ri % nrow, ci % ncol
                keep = np.ones(n, dtype=bool)
            else:
                keep = (ri >= 0) & (ri < nrow) & (ci >= 0) & (ci < ncol)
            i = ri[keep] + ci[keep] * nrow
            rows_out.append(i)
            cols_out.append(j[keep])
            vals_out.append(np.full(int(keep.sum()), w))
    w_mat = _from_coo_max(
        n, np.concatenate(rows_out), np.concatenate(cols_out), np.concatenate(vals_out)
    )
    if not classify(w_mat, cfg).cmw:
        raise RuntimeError("structuring-function matrix is not CMW (builder bug)")
    return w_mat


_NEIGHBOR_STEPS = {
    4: ((1, 0), (0, 1)),
    8: ((1, 0), (0, 1), (1, 1), (1, -1)),
}


def _shift_slices(d: int, size: int) -> tuple[slice, slice]:
    """Source/destination slices linking each cell to the one ``d`` away."""
    if d >= 0:
        return slice(0, size - d), slice(d, size)
    return slice(-d, size), slice(0, size + d)


def build_matrix_adaptive(
    guide,
    lam: float,
    neighborhood: int = 4,
    cfg: LatticeConfig | None = None,
) -> MaxPlusMatrix:
    """Guide-adapted weights: ``w[i, j] = -lam * |g_i - g_j|`` on grid edges.

    The guide is a 1-D signal or 2-D image; cells are linked to their 4- or
    8-neighbours, the diagonal is zero, and the weight matrix is symmetric
    by construction (suitable for the symmetric spectral consequences).
    """
    if lam < 0:
        raise ValueError("lam must be >= 0")
    g = np.asarray(guide, dtype=np.float64)
    if g.ndim == 1:
        steps = ((1,),)
        dims = g.shape
    elif g.ndim == 2:
        if neighborhood not in _NEIGHBOR_STEPS:
            raise ValueError("neighborhood must be 4 or 8")
        steps = _NEIGHBOR_STEPS[neighborhood]
        dims = g.shape
    else:
        raise ValueError("guide must be 1-D or 2-D")
    n = g.size
    if cfg is not None and cfg.n != n:
        raise DimensionError(f"guide has {n} cells but lattice has n={cfg.n}")
    flat = g.ravel(order="F")
    idx = np.arange(n).reshape(dims, order="F")
    rows = [np.arange(n)]
    cols = [np.arange(n)]
    vals = [np.zeros(n)]
    for step in steps:
        src_sl, dst_sl = zip(*(_shift_slices(d, s) for d, s in zip(step, dims)))
        src = idx[src_sl].ravel(order="F")
        dst = idx[dst_sl].ravel(order="F")
        w = -lam * np.abs(flat[src] - flat[dst])
        rows += [src, dst]
        cols += [dst, src]
        vals += [w, w]
    w_mat = _from_coo_max(n, np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))
    report = classify(w_mat, cfg)
    if not (report.cmw and w_mat.is_symmetric()):
        raise RuntimeError("adaptive matrix is not symmetric CMW (builder bug)")
    return w_mat
