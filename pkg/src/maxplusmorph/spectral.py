"""Max-plus spectral layer: metric matrix, eigen-nodes, eigenspace.

For a definite matrix the sup-integral ``S_n`` is the metric matrix: entry
``(i, j)`` is the best weight over *all* paths from ``i`` to ``j`` (longer
walks only lose weight on non-positive circuits).  Vertices on zero-weight
circuits are the eigen-nodes; their metric columns are fixpoints of the
dilation and span the eigenspace, with eigenvalue 0 throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotDefiniteError
from .lattice import FLOAT_ATOL, NEG_INF, LatticeConfig, vectors_equal
from .matrix import (
    MaxPlusMatrix,
    mats_equal,
    mp_mat_join,
    mp_mat_mat,
    mp_mat_vec,
    zero_tolerance,
)
from .sampling import _rng, random_lattice_vector


def metric_matrix(w: MaxPlusMatrix) -> MaxPlusMatrix:
    """``S_n = W ∨ W^2 ∨ ... ∨ W^n`` for a definite matrix.

    Row- or column-0-astic matrices are definite outright, which licenses
    the fast route: square ``E ∨ W`` about ``log2(n)`` times and finish with
    one product by ``W`` (extra powers beyond ``n`` cannot add weight).
    Anything else is integrated term by term and its circuit diagonal
    checked; a non-definite matrix is rejected because the all-paths
    reading of the entries would be invalid.
    """
    tol = zero_tolerance(w)
    astic = bool(
        np.all(np.abs(w.row_suprema()) <= tol)
        or np.all(np.abs(w.column_suprema()) <= tol)
    )
    if astic:
        k = mp_mat_join(MaxPlusMatrix.identity(w.n), w)
        m = 1
        while m < w.n:
            k = mp_mat_mat(k, k)
            m *= 2
        return mp_mat_mat(k, w)
    acc = w
    power = w
    for _ in range(w.n - 1):
        power = mp_mat_mat(power, w)
        acc = mp_mat_join(acc, power)
    mcw = float(np.max(acc.diagonal())) if w.n else NEG_INF
    if not abs(mcw) <= tol:
        raise NotDefiniteError(
            f"matrix is not definite (max circuit weight {mcw}); "
            "metric interpretation invalid"
        )
    return acc


def _column(m: MaxPlusMatrix, j: int) -> np.ndarray:
    rows, vals = m.transpose().row(j)
    out = np.full(m.n, NEG_INF)
    out[rows] = vals
    return out


class SpectralDecomposition:
    """Metric matrix, eigen-nodes, their equivalence classes, and the basis.

    ``basis`` holds one fundamental eigenvector per equivalence class, the
    representative being the class's smallest node index (deterministic
    output).  Construction asserts the theory's internal identities; a
    failure there signals a kernel bug, not bad input.
    """

    def __init__(self, matrix: MaxPlusMatrix):
        self.matrix = matrix
        self.metric = metric_matrix(matrix)
        self.tol = zero_tolerance(matrix)
        diag = self.metric.diagonal()
        self.eigen_nodes: tuple[int, ...] = tuple(
            int(j) for j in np.flatnonzero(np.abs(diag) <= self.tol)
        )
        self.classes: tuple[tuple[int, ...], ...] = self._partition()
        self.basis_nodes: tuple[int, ...] = tuple(cls[0] for cls in self.classes)
        self.basis: tuple[np.ndarray, ...] = tuple(
            _column(self.metric, j) for j in self.basis_nodes
        )
        for node, xi in zip(self.basis_nodes, self.basis):
            fixed = mp_mat_vec(self.matrix, xi)
            if not vectors_equal(fixed, xi, atol=self.tol):
                raise RuntimeError(
                    f"fundamental eigenvector at node {node} is not fixed by the "
                    "dilation (kernel bug)"
                )

    def _partition(self) -> tuple[tuple[int, ...], ...]:
        classes: list[tuple[int, ...]] = []
        unassigned = list(self.eigen_nodes)
        while unassigned:
            i = unassigned.pop(0)
            mates = [i] + [j for j in unassigned if self._nodes_equivalent(i, j)]
            unassigned = [j for j in unassigned if j not in mates]
            classes.append(tuple(mates))
        for cls in classes:
            ref = _column(self.metric, cls[0])
            for j in cls[1:]:
                if not vectors_equal(_column(self.metric, j), ref, atol=self.tol):
                    raise RuntimeError(
                        f"equivalent eigen-nodes {cls[0]} and {j} have unequal "
                        "fundamental eigenvectors (kernel bug)"
                    )
        return tuple(classes)

    def _nodes_equivalent(self, i: int, j: int) -> bool:
        dij = self.metric.entry(i, j)
        dji = self.metric.entry(j, i)
        if dij == NEG_INF or dji == NEG_INF:
            return i == j
        return abs(dij + dji) <= self.tol

    def equivalent_nodes(self, i: int, j: int) -> bool:
        """True iff a zero-weight circuit passes through both eigen-nodes
        (read off the metric matrix: the optimal ``i -> j`` and ``j -> i``
        paths concatenate to weight 0)."""
        if i not in self.eigen_nodes or j not in self.eigen_nodes:
            raise ValueError("node equivalence is defined between eigen-nodes")
        return i == j or self._nodes_equivalent(i, j)

    def fundamental_eigenvectors(self) -> list[tuple[int, np.ndarray]]:
        """All ``(eigen-node, metric column)`` pairs, each a dilation fixpoint."""
        out = []
        for j in self.eigen_nodes:
            xi = _column(self.metric, j)
            fixed = mp_mat_vec(self.matrix, xi)
            if not vectors_equal(fixed, xi, atol=self.tol):
                raise RuntimeError(
                    f"fundamental eigenvector at node {j} is not fixed (kernel bug)"
                )
            out.append((j, xi))
        return out

    def maximal_nonequivalent_set(self) -> list[np.ndarray]:
        """One fundamental eigenvector per class (lowest node index first)."""
        return [xi.copy() for xi in self.basis]

    def project(self, x) -> "EigenProjection":
        return eigenspace_project(self, x)


@dataclass(frozen=True)
class EigenProjection:
    """Residuation of a vector against the basis.

    ``coefficients[k]`` is the largest shift that keeps basis vector ``k``
    below ``x``; the reconstruction is the supremum of the shifted basis.
    ``member`` records whether the reconstruction gives ``x`` back, i.e.
    whether ``x`` lies in the eigenspace (coefficients live in R ∪ {-inf}).
    """

    coefficients: np.ndarray
    reconstruction: np.ndarray
    member: bool


def eigenspace_project(dec: SpectralDecomposition, x) -> EigenProjection:
    """Project ``x`` onto the eigenspace by residuation.

    ``c_k = min_i (x_i - xi_k[i])`` over the finite entries of the basis
    vector, then the reconstruction ``max_k (c_k + xi_k)`` is the largest
    eigenspace element dominated by ``x``.
    """
    x = np.asarray(x, dtype=np.float64)
    n = dec.matrix.n
    if x.shape != (n,):
        raise ValueError(f"vector must have shape ({n},)")
    # Exact round-trip is only promised when both the metric and x are
    # integral; otherwise residuation can wobble by an ulp.
    x_integral = bool(np.all(x == np.floor(x)))  # -inf entries pass
    atol = 0.0 if (dec.tol == 0.0 and x_integral) else FLOAT_ATOL
    coeffs = np.empty(len(dec.basis))
    recon = np.full(n, NEG_INF)
    for k, xi in enumerate(dec.basis):
        finite = xi > NEG_INF
        coeffs[k] = float(np.min(x[finite] - xi[finite]))
        recon = np.maximum(recon, coeffs[k] + xi)
    member = vectors_equal(recon, x, atol=atol)
    return EigenProjection(coefficients=coeffs, reconstruction=recon, member=member)


@dataclass(frozen=True)
class SpectralReport:
    """Outcome of the spectral consequence checks; truthy iff all passed."""

    ok: bool
    failures: tuple[str, ...] = field(default=(), repr=False)

    def __bool__(self) -> bool:
        return self.ok


def check_symmetric_consequences(
    w: MaxPlusMatrix, cfg: LatticeConfig, trials: int = 50, seed=None
) -> SpectralReport:
    """Verify what symmetry buys on top of double 0-asticity.

    Checks, on the metric matrix ``D`` and ``p = n`` operators: (i) ``D ⊗ D
    = D``; (ii) every diagonal entry of ``D`` is zero (every vertex is an
    eigen-node); (iii) the integrated erosion at scale ``n`` equals the
    integrated opening on sampled vectors; (iv) sampled openings land in
    the eigenspace and sampled eigenspace members are opening fixpoints.
    """
    from .iterated import IteratedFamily, big_g_opening, integral_erode

    if not w.is_symmetric(atol=zero_tolerance(w)):
        raise ValueError("check_symmetric_consequences requires a symmetric matrix")
    fam = IteratedFamily(w, cfg, prune=False)
    dec = SpectralDecomposition(w)
    tol = dec.tol if dec.tol else FLOAT_ATOL
    exact = w.is_integral()
    failures = []
    if not mats_equal(
        mp_mat_mat(dec.metric, dec.metric), dec.metric, atol=dec.tol
    ):
        failures.append("metric matrix is not idempotent")
    if not np.all(np.abs(dec.metric.diagonal()) <= dec.tol):
        failures.append("metric diagonal has a non-zero entry")
    rng = _rng(seed)
    n = w.n
    for t in range(trials):
        x = random_lattice_vector(cfg, rng, integral=exact)
        e = integral_erode(fam, n, x)
        g = big_g_opening(fam, n, x)
        if not vectors_equal(e, g, atol=0.0 if exact else tol):
            failures.append(f"trial {t}: integrated erosion != integrated opening")
        if not eigenspace_project(dec, g).member:
            failures.append(f"trial {t}: opening output escaped the eigenspace")
        member = mp_mat_vec(dec.metric, random_lattice_vector(cfg, rng, integral=exact))
        if not vectors_equal(big_g_opening(fam, n, member), member, atol=0.0 if exact else tol):
            failures.append(f"trial {t}: eigenspace member moved by the opening")
    return SpectralReport(ok=not failures, failures=tuple(failures))


def check_eigenproblem(
    dec: SpectralDecomposition, cfg: LatticeConfig, trials: int = 50, seed=None
) -> SpectralReport:
    """Sample the eigenproblem statements for a doubly-0-astic matrix.

    Basis vectors must be dilation fixpoints; the all-zero-coefficient
    combination must be a finite eigenvector when one exists; random finite
    combinations of the basis must be eigenvectors with eigenvalue exactly
    0 and must project back onto themselves.
    """
    tol = dec.tol if dec.tol else FLOAT_ATOL
    failures = []
    if not dec.eigen_nodes:
        return SpectralReport(ok=False, failures=("no eigen-node found",))
    stack = np.stack(dec.basis)
    v0 = np.max(stack, axis=0)
    if np.all(np.isfinite(v0)):
        if not vectors_equal(mp_mat_vec(dec.matrix, v0), v0, atol=tol):
            failures.append("supremum of the basis is not a finite eigenvector")
    else:
        failures.append("no finite eigenvector in the basis span")
    rng = _rng(seed)
    span = cfg.b - cfg.a
    for t in range(trials):
        c = rng.uniform(-span, span, size=len(dec.basis))
        v = np.max(stack + c[:, None], axis=0)
        if not np.all(np.isfinite(v)):
            continue
        if not vectors_equal(mp_mat_vec(dec.matrix, v), v, atol=tol):
            failures.append(f"trial {t}: basis combination is not a 0-eigenvector")
        elif not eigenspace_project(dec, v).member:
            failures.append(f"trial {t}: eigenvector fell outside the eigenspace")
    return SpectralReport(ok=not failures, failures=tuple(failures))


def export_basis_csv(dec: SpectralDecomposition, fp) -> None:
    """Write basis vectors as CSV columns, headed by 1-based eigen-node ids."""
    header = ",".join(str(j + 1) for j in dec.basis_nodes)
    fp.write(header + "\n")
    for i in range(dec.matrix.n):
        fp.write(",".join(_format_value(xi[i]) for xi in dec.basis) + "\n")


def _format_value(v: float) -> str:
    return "-inf" if v == NEG_INF else format(v, ".12g")
