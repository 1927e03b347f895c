"""Asticity classification and dilation-equivalence classes of matrices.

A matrix represents a dilation on ``[a, b]^n`` iff it is row-0-astic, an
erosion iff column-0-astic, an adjunction iff doubly-0-astic.  Two
doubly-0-astic matrices represent the *same* operators exactly when they
agree on every entry above ``a - b``; each equivalence class is a complete
lattice whose extremes are computed here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AsticityError, DimensionError
from .lattice import NEG_INF, LatticeConfig
from .matrix import (
    MaxPlusMatrix,
    _from_coo_max,
    mats_equal,
    mp_mat_join,
    mp_mat_mat,
    prune_keep_above,
    zero_tolerance,
)


@dataclass(frozen=True)
class AsticityReport:
    """Classification flags for one matrix.

    ``max_circuit_weight`` is the largest circuit weight in the adjacency
    graph, read off the diagonal of ``S_n``; it is exact whenever it is
    non-positive (positive circuits can compound, so a positive value only
    certifies non-definiteness).  ``-inf`` means the graph has no circuit.
    """

    row_0_astic: bool
    column_0_astic: bool
    doubly_0_astic: bool
    zero_astic: bool
    cmw: bool
    definite: bool
    max_circuit_weight: float

    def __post_init__(self):
        # Internal consistency; violations would signal a classifier bug.
        if self.doubly_0_astic != (self.row_0_astic and self.column_0_astic):
            raise RuntimeError("inconsistent report: doubly != row and column")
        if self.cmw and not self.doubly_0_astic:
            raise RuntimeError("inconsistent report: CMW must be doubly-0-astic")
        if (self.row_0_astic or self.column_0_astic) and not self.definite:
            raise RuntimeError("inconsistent report: 0-astic matrices are definite")


def max_circuit_weight(w: MaxPlusMatrix) -> float:
    """Max diagonal entry of ``S_n(w)``; every circuit splits into elementary
    circuits of length <= n, so this bounds the circuit supremum and equals
    it whenever it is non-positive."""
    power = w
    best = float(np.max(w.diagonal())) if w.n else NEG_INF
    for _ in range(w.n - 1):
        power = mp_mat_mat(power, w)
        best = max(best, float(np.max(power.diagonal())))
    return best


def classify(w: MaxPlusMatrix, cfg: LatticeConfig | None = None) -> AsticityReport:
    """Compute all asticity flags for ``w``.

    Definiteness of a row- or column-0-astic matrix follows from chasing
    zero-weight edges until a vertex repeats, so the (possibly expensive)
    circuit scan is skipped for large astic matrices.
    """
    if cfg is not None and cfg.n != w.n:
        raise DimensionError(f"matrix is {w.n}x{w.n} but lattice has n={cfg.n}")
    tol = zero_tolerance(w)
    row_sup = w.row_suprema()
    col_sup = w.column_suprema()
    row = bool(np.all(np.abs(row_sup) <= tol))
    col = bool(np.all(np.abs(col_sup) <= tol))
    zero = w.nnz > 0 and abs(float(np.max(w.data))) <= tol
    diag = w.diagonal()
    cmw = (
        row
        and col
        and bool(np.all(w.data <= tol))
        and bool(np.all(np.abs(diag) <= tol))
    )
    if (row or col) and w.n > 64:
        mcw = 0.0
    else:
        mcw = max_circuit_weight(w)
    definite = (row or col) or abs(mcw) <= tol
    return AsticityReport(
        row_0_astic=row,
        column_0_astic=col,
        doubly_0_astic=row and col,
        zero_astic=zero,
        cmw=cmw,
        definite=definite,
        max_circuit_weight=mcw,
    )


def _require_doubly(w: MaxPlusMatrix, what: str) -> None:
    tol = zero_tolerance(w)
    row_sup = w.row_suprema()
    bad = np.flatnonzero(np.abs(row_sup) > tol)
    if bad.size:
        raise AsticityError(
            f"{what} needs a doubly-0-astic matrix: row {bad[0]} has supremum "
            f"{row_sup[bad[0]]}"
        )
    col_sup = w.column_suprema()
    bad = np.flatnonzero(np.abs(col_sup) > tol)
    if bad.size:
        raise AsticityError(
            f"{what} needs a doubly-0-astic matrix: column {bad[0]} has supremum "
            f"{col_sup[bad[0]]}"
        )


def canonical_upper(w: MaxPlusMatrix, cfg: LatticeConfig) -> MaxPlusMatrix:
    """Greatest matrix representing the same operators: entrywise max with
    the constant ``a - b``.  The result is dense by construction."""
    _require_doubly(w, "canonical_upper")
    return mp_mat_join(w, MaxPlusMatrix.constant(w.n, cfg.prune_threshold))


def canonical_lower(w: MaxPlusMatrix, cfg: LatticeConfig) -> MaxPlusMatrix:
    """Smallest matrix representing the same operators: entries at or below
    ``a - b`` are dropped from storage (they act as ``-inf``)."""
    _require_doubly(w, "canonical_lower")
    return prune_keep_above(w, cfg.prune_threshold)


def equivalent(m: MaxPlusMatrix, w: MaxPlusMatrix, cfg: LatticeConfig) -> bool:
    """True iff ``m`` and ``w`` induce identical dilations on the lattice.

    Equality of the canonical lower forms is the sparse-friendly phrasing of
    "the canonical upper forms agree entrywise": both say the entries above
    ``a - b`` coincide and everything else is ignorable.
    """
    if m.n != w.n:
        raise DimensionError(f"dimension mismatch: {m.n} vs {w.n}")
    if cfg.n != m.n:
        raise DimensionError(f"matrices are {m.n}x{m.n} but lattice has n={cfg.n}")
    _require_doubly(m, "equivalent")
    _require_doubly(w, "equivalent")
    atol = zero_tolerance(m, w)
    return mats_equal(
        prune_keep_above(m, cfg.prune_threshold),
        prune_keep_above(w, cfg.prune_threshold),
        atol=atol,
    )


def _entrywise_min(a: MaxPlusMatrix, b: MaxPlusMatrix) -> MaxPlusMatrix:
    """Entrywise min over R ∪ {-inf}: only positions stored in both survive."""
    n = a.n
    arows = np.repeat(np.arange(n), np.diff(a.indptr))
    brows = np.repeat(np.arange(n), np.diff(b.indptr))
    akey = arows * n + a.indices
    bkey = brows * n + b.indices
    common, ia, ib = np.intersect1d(akey, bkey, return_indices=True)
    vals = np.minimum(a.data[ia], b.data[ib])
    return _from_coo_max(n, common // n, common % n, vals)


def class_join(m: MaxPlusMatrix, w: MaxPlusMatrix, cfg: LatticeConfig) -> MaxPlusMatrix:
    """Entrywise max of two equivalent matrices; stays in the class."""
    if not equivalent(m, w, cfg):
        raise ValueError("class_join requires equivalent matrices")
    out = mp_mat_join(m, w)
    if not equivalent(out, w, cfg):
        raise RuntimeError("class_join left the equivalence class (kernel bug)")
    return out


def class_meet(m: MaxPlusMatrix, w: MaxPlusMatrix, cfg: LatticeConfig) -> MaxPlusMatrix:
    """Entrywise min of two equivalent matrices; stays in the class."""
    if not equivalent(m, w, cfg):
        raise ValueError("class_meet requires equivalent matrices")
    out = _entrywise_min(m, w)
    if not equivalent(out, w, cfg):
        raise RuntimeError("class_meet left the equivalence class (kernel bug)")
    return out
