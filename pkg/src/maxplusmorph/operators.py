"""Dilations, erosions, adjunction checks, and representation extraction.

A row-0-astic matrix acts on the lattice as the dilation ``x -> W ⊗ x``; its
adjoint erosion evaluates ``min_j (y_j - w_ji)`` down the columns.  Both are
computed directly on the sparse storage; the complement-conjugation identity
is kept as a test property rather than an evaluation route, to avoid
needless rounding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import AsticityError
from .lattice import LatticeConfig, impulse, vectors_equal
from .matrix import (
    MaxPlusMatrix,
    mp_mat_vec,
    mp_mat_vec_min,
    zero_tolerance,
)
from .sampling import _rng, random_lattice_vector


def _require_row_astic(w: MaxPlusMatrix, what: str) -> None:
    tol = zero_tolerance(w)
    sup = w.row_suprema()
    bad = np.flatnonzero(np.abs(sup) > tol)
    if bad.size:
        raise AsticityError(
            f"{what} needs a row-0-astic matrix: row {bad[0]} has supremum {sup[bad[0]]}"
        )


def _require_column_astic(w: MaxPlusMatrix, what: str) -> None:
    tol = zero_tolerance(w)
    sup = w.column_suprema()
    bad = np.flatnonzero(np.abs(sup) > tol)
    if bad.size:
        raise AsticityError(
            f"{what} needs a column-0-astic matrix: column {bad[0]} has supremum "
            f"{sup[bad[0]]}"
        )


def dilate(w: MaxPlusMatrix, x, cfg: LatticeConfig | None = None) -> np.ndarray:
    """Dilation ``W ⊗ x``.

    Row-0-asticity is enforced because it is exactly the condition under
    which the product maps ``[a, b]^n`` into itself; no clamping is applied
    or needed.
    """
    _require_row_astic(w, "dilate")
    if cfg is not None:
        x = cfg.validate_vector(x)
    return mp_mat_vec(w, x)


def erode(w: MaxPlusMatrix, y, cfg: LatticeConfig | None = None) -> np.ndarray:
    """Erosion ``result_i = min_j (y_j - w_ji)`` over the stored column.

    Column-0-asticity guarantees every column holds a zero, so the result
    stays at or below ``b`` by itself; the adjoint clamp is a no-op here and
    lives in :func:`adjoint_erosion` for matrices that are only row-0-astic.
    """
    _require_column_astic(w, "erode")
    if cfg is not None:
        y = cfg.validate_vector(y)
        out = mp_mat_vec_min(w.transpose(), y)
        # Column zeros force out <= b; a violation would be a kernel bug.
        assert np.all(out <= cfg.b + zero_tolerance(w)), "erosion escaped the lattice"
        return out
    return mp_mat_vec_min(w.transpose(), y)


def adjoint_erosion(
    w: MaxPlusMatrix, y, cfg: LatticeConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Adjoint of ``dilate(w, .)`` for a matrix that is only row-0-astic.

    Columns whose supremum is below zero (or empty columns) push the raw
    erosion above ``b``; the adjoint clamps them back.  Returns the clamped
    vector together with the boolean mask of coordinates where the clamp
    fired (all-False exactly when ``w`` is also column-0-astic).
    """
    _require_row_astic(w, "adjoint_erosion")
    y = cfg.validate_vector(y)
    raw = mp_mat_vec_min(w.transpose(), y)
    clamped = raw > cfg.b
    return np.minimum(raw, cfg.b), clamped


def opening(w: MaxPlusMatrix, x, cfg: LatticeConfig | None = None) -> np.ndarray:
    """Morphological opening: dilate after erode (anti-extensive, idempotent)."""
    _require_row_astic(w, "opening")
    _require_column_astic(w, "opening")
    return dilate(w, erode(w, x, cfg))


def closing(w: MaxPlusMatrix, x, cfg: LatticeConfig | None = None) -> np.ndarray:
    """Morphological closing: erode after dilate (extensive, idempotent)."""
    _require_row_astic(w, "closing")
    _require_column_astic(w, "closing")
    return erode(w, dilate(w, x, cfg))


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a sampled law check; truthy iff no counterexample."""

    ok: bool
    reason: str = ""
    counterexample: tuple = field(default=None, repr=False)

    def __bool__(self) -> bool:
        return self.ok


def check_adjunction(
    w: MaxPlusMatrix, cfg: LatticeConfig, trials: int = 100, seed=None
) -> CheckResult:
    """Sample the adjunction law ``dilate(x) <= y  <=>  x <= erode(y)``.

    Matrices that are not doubly-0-astic are rejected up front: they cannot
    carry an adjunction on the lattice at all.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tol = zero_tolerance(w)
    sup = w.row_suprema()
    if np.any(np.abs(sup) > tol):
        return CheckResult(False, "not row-0-astic, hence no adjunction")
    if np.any(np.abs(w.column_suprema()) > tol):
        return CheckResult(False, "not column-0-astic, hence no adjunction")
    rng = _rng(seed)
    for _ in range(trials):
        x = random_lattice_vector(cfg, rng)
        y = random_lattice_vector(cfg, rng)
        left = bool(np.all(mp_mat_vec(w, x) <= y))
        right = bool(np.all(x <= mp_mat_vec_min(w.transpose(), y)))
        if left != right:
            return CheckResult(False, "adjunction law violated", (x, y))
    return CheckResult(True)


def matrix_from_dilation(
    delta: Callable[[np.ndarray], np.ndarray], cfg: LatticeConfig
) -> MaxPlusMatrix:
    """Recover a representing matrix from a black-box dilation.

    Column ``j`` of the result is ``delta(impulse(j)) - b``; exactly ``n``
    probe evaluations are made.  For a genuine shift-invariant dilation the
    result is row-0-astic and induces the same operator as any matrix the
    caller started from (up to entries at or below ``a - b``).
    """
    n = cfg.n
    cols = np.empty((n, n))
    for j in range(n):
        probe = np.asarray(delta(impulse(j, cfg)), dtype=np.float64)
        if probe.shape != (n,):
            raise ValueError("dilation returned a vector of the wrong shape")
        cols[:, j] = probe - cfg.b
    w = MaxPlusMatrix.from_dense(cols)
    try:
        _require_row_astic(w, "matrix_from_dilation")
    except AsticityError as exc:
        raise ValueError(
            f"input is not a representable dilation ({exc})"
        ) from exc
    return w


def check_shift_invariance(
    op: Callable[[np.ndarray], np.ndarray],
    kind: str,
    cfg: LatticeConfig,
    trials: int = 100,
    seed=None,
    atol: float = 1e-9,
) -> CheckResult:
    """Sample the vertical-shift-invariance law for a black-box operator.

    ``kind='dilation'`` samples ``lam <= 0`` and tests
    ``op((lam + x) ∨ a) == (lam + op(x)) ∨ a``; ``kind='erosion'`` samples
    ``lam >= 0`` against the dual law with ``∧ b``.
    """
    if kind not in ("dilation", "erosion"):
        raise ValueError("kind must be 'dilation' or 'erosion'")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = _rng(seed)
    span = cfg.b - cfg.a
    for _ in range(trials):
        x = random_lattice_vector(cfg, rng)
        if kind == "dilation":
            lam = -rng.uniform(0.0, span)
            lhs = np.asarray(op(np.maximum(lam + x, cfg.a)), dtype=np.float64)
            rhs = np.maximum(lam + np.asarray(op(x), dtype=np.float64), cfg.a)
        else:
            lam = rng.uniform(0.0, span)
            lhs = np.asarray(op(np.minimum(lam + x, cfg.b)), dtype=np.float64)
            rhs = np.minimum(lam + np.asarray(op(x), dtype=np.float64), cfg.b)
        if not vectors_equal(lhs, rhs, atol=atol):
            return CheckResult(False, "shift-invariance violated", (lam, x))
    return CheckResult(True)


def check_dilation_representable(
    op: Callable[[np.ndarray], np.ndarray],
    cfg: LatticeConfig,
    trials: int = 100,
    seed=None,
    atol: float = 1e-9,
) -> CheckResult:
    """Sampled necessary conditions for "op has a representing matrix".

    Shift-invariance alone does not separate dilations from other rank
    filters (a running median commutes with monotone clamps too), so this
    additionally samples sup-commutation ``op(x ∨ y) == op(x) ∨ op(y)``.
    Sampling cannot *prove* representability; a False is conclusive, a True
    is evidence only.
    """
    shift = check_shift_invariance(op, "dilation", cfg, trials=trials, seed=seed, atol=atol)
    if not shift:
        return shift
    rng = _rng(seed)
    for _ in range(trials):
        x = random_lattice_vector(cfg, rng)
        y = random_lattice_vector(cfg, rng)
        lhs = np.asarray(op(np.maximum(x, y)), dtype=np.float64)
        rhs = np.maximum(
            np.asarray(op(x), dtype=np.float64), np.asarray(op(y), dtype=np.float64)
        )
        if not vectors_equal(lhs, rhs, atol=atol):
            return CheckResult(False, "sup-commutation violated", (x, y))
    return CheckResult(True)
