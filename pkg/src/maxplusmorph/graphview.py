"""Graph semantics of max-plus matrices and brute-force path oracles.

A matrix is the adjacency matrix of a weighted digraph (edge present iff
the weight is finite).  Matrix powers and their sup-integrals then read as
best path weights of exact / bounded length, which gives an independent,
deliberately exponential oracle for the algebraic kernels.  Oracles are
guarded; they validate desk-scale instances and never run in production
evaluation paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DimensionError, EnumerationBoundError
from .iterated import IteratedFamily
from .lattice import NEG_INF
from .matrix import MaxPlusMatrix

ENUMERATION_BOUND = 10**7


@dataclass(frozen=True)
class WeightedDigraph:
    """Adjacency view of a matrix: vertices ``0..n-1``, finite-weight edges."""

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        for i, j, w in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise IndexError(f"edge ({i}, {j}) out of range")
            if not np.isfinite(w):
                raise ValueError("edges carry finite weights; absence means -inf")

    @classmethod
    def from_matrix(cls, w: MaxPlusMatrix) -> "WeightedDigraph":
        return cls(w.n, tuple(w.items()))

    def to_matrix(self) -> MaxPlusMatrix:
        return MaxPlusMatrix.from_entries(self.n, self.edges)

    def successors(self) -> list[list[tuple[int, float]]]:
        out: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for i, j, w in self.edges:
            out[i].append((j, w))
        for lst in out:
            lst.sort()
        return out

    def predecessors(self) -> list[list[tuple[int, float]]]:
        out: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for i, j, w in self.edges:
            out[j].append((i, w))
        for lst in out:
            lst.sort()
        return out


@dataclass(frozen=True)
class Path:
    """A walk ``(k_1, ..., k_l)``; length is its edge count, weight the sum."""

    vertices: tuple[int, ...]
    weight: float

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_circuit(self) -> bool:
        return len(self.vertices) > 1 and self.vertices[0] == self.vertices[-1]


def _guard(n: int, p: int) -> None:
    if n**p > ENUMERATION_BOUND:
        raise EnumerationBoundError(
            f"enumerating length-{p} paths on {n} vertices may visit ~{n**p} "
            "candidates; the oracles are desk-scale validators only"
        )


def enumerate_paths(g: WeightedDigraph, i: int, j: int, p: int) -> list[Path]:
    """All walks from ``i`` to ``j`` of length exactly ``p`` (DFS order)."""
    if p < 1:
        raise ValueError("path length must be >= 1")
    _guard(g.n, p)
    succ = g.successors()
    out: list[Path] = []

    def walk(prefix: list[int], acc: float) -> None:
        if len(prefix) == p + 1:
            if prefix[-1] == j:
                out.append(Path(tuple(prefix), acc))
            return
        for nxt, w in succ[prefix[-1]]:
            prefix.append(nxt)
            walk(prefix, acc + w)
            prefix.pop()

    walk([i], 0.0)
    return out


def oracle_power_entry(g: WeightedDigraph, i: int, j: int, p: int) -> float:
    """Best weight over paths ``i -> j`` of length exactly ``p``; ``-inf`` if none."""
    paths = enumerate_paths(g, i, j, p)
    return max((q.weight for q in paths), default=NEG_INF)


def oracle_integral_entry(g: WeightedDigraph, i: int, j: int, p: int) -> float:
    """Best weight over paths ``i -> j`` of length at most ``p``; ``-inf`` if none."""
    best = NEG_INF
    for k in range(1, p + 1):
        best = max(best, oracle_power_entry(g, i, j, k))
    return best


def neighborhood(
    g: WeightedDigraph, i: int, p: int, mode: str = "exact", direction: str = "out"
) -> set[int]:
    """Vertices joined to ``i`` by a walk of length exactly/at most ``p``.

    ``direction='out'`` follows edges from ``i``; ``'in'`` collects the
    vertices that reach ``i``.  Computed by frontier propagation, so this is
    polynomial and carries no enumeration guard.
    """
    if mode not in ("exact", "upto"):
        raise ValueError("mode must be 'exact' or 'upto'")
    if direction not in ("out", "in"):
        raise ValueError("direction must be 'out' or 'in'")
    if p < 1:
        raise ValueError("p must be >= 1")
    adj = g.successors() if direction == "out" else g.predecessors()
    frontier = {i}
    seen: set[int] = set()
    for _ in range(p):
        frontier = {v for u in frontier for v, _ in adj[u]}
        seen |= frontier
    return frontier if mode == "exact" else seen


def neighborhood_transform(
    g: WeightedDigraph,
    p: int,
    x,
    kind: str = "dilate",
    integrated: bool = False,
) -> np.ndarray:
    """Evaluate an iterated operator through its graph-neighborhood formula.

    Cross-check oracle only: the per-entry path weights come from the
    brute-force enumeration, never from the algebraic kernels it validates.
    ``kind`` selects dilation/erosion, ``integrated`` switches from the
    exact-length power weights to the up-to-``p`` integral weights.
    """
    if kind not in ("dilate", "erode"):
        raise ValueError("kind must be 'dilate' or 'erode'")
    x = np.asarray(x, dtype=np.float64)
    if x.size != g.n:
        raise DimensionError(f"vector length {x.size} does not match n={g.n}")
    mode = "upto" if integrated else "exact"
    entry = oracle_integral_entry if integrated else oracle_power_entry
    out = np.empty(g.n)
    for i in range(g.n):
        if kind == "dilate":
            hood = neighborhood(g, i, p, mode, "out")
            vals = [x[j] + entry(g, i, j, p) for j in sorted(hood)]
            out[i] = max(vals, default=NEG_INF)
        else:
            hood = neighborhood(g, i, p, mode, "in")
            vals = [x[j] - entry(g, j, i, p) for j in sorted(hood)]
            out[i] = min(vals, default=np.inf)
    return out


def opening_threshold_check(fam: IteratedFamily, p: int, x, i: int, t: float) -> bool:
    """Literal scan of the path-opening threshold criterion.

    True iff some vertex ``j`` within ``p`` steps of ``i`` has all its
    in-neighbourhood values above ``t`` after the connection-strength
    correction ``- s[i, j] + s[l, j]``.
    """
    x = np.asarray(x, dtype=np.float64)
    s = fam.integral(p)
    st = s.transpose()
    cols, svals = s.row(i)
    for j, s_ij in zip(cols.tolist(), svals.tolist()):
        ls, lvals = st.row(j)
        if all(
            x[l] >= t - s_ij + s_lj for l, s_lj in zip(ls.tolist(), lvals.tolist())
        ):
            return True
    return False


def opening_via_threshold(fam: IteratedFamily, p: int, x) -> np.ndarray:
    """Integrated opening computed purely by threshold scanning.

    The supremum over continuous ``t`` is attained on the finite candidate
    set ``{x_l + s_ij - s_lj} ∩ [a, b] ∪ {a}``: the opening value at ``i``
    equals ``max_j min_l (x_l + s_ij - s_lj)`` clamped to the lattice, and
    the inner min is itself one of the listed breakpoints.
    """
    x = np.asarray(x, dtype=np.float64)
    cfg = fam.cfg
    s = fam.integral(p)
    st = s.transpose()
    out = np.full(fam.base.n, cfg.a)
    for i in range(fam.base.n):
        candidates = {cfg.a}
        cols, svals = s.row(i)
        for j, s_ij in zip(cols.tolist(), svals.tolist()):
            ls, lvals = st.row(j)
            for l, s_lj in zip(ls.tolist(), lvals.tolist()):
                t = x[l] + s_ij - s_lj
                if cfg.a <= t <= cfg.b:
                    candidates.add(float(t))
        passing = [t for t in candidates if opening_threshold_check(fam, p, x, i, t)]
        if passing:
            out[i] = max(passing)
    return out


def to_dot(g: WeightedDigraph, name: str = "G") -> str:
    """DOT dump for inspection; vertex ids are 1-based, labels are weights."""
    lines = [f"digraph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v + 1};")
    for i, j, w in g.edges:
        lines.append(f'  {i + 1} -> {j + 1} [label="{w:g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
