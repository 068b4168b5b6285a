"""Comparison heuristics: edge contraction (EC), differencing edge
contraction (DEC) and the sequential Sahni-Gonzalez rules (SG, SG3).

All of them break ties between equal-weight pairs by the lexicographically
smallest ``(i, j)``, matching the stabilizer default.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

import numpy as np

from .graph import (
    ContractionTrace,
    CutAssignment,
    GraphError,
    TraceStep,
    WeightMatrix,
    cut_weight,
)

DEC_DIRECTIONS = ("max-total", "keep-smaller", "keep-larger")


class ContractionResult(NamedTuple):
    assignment: CutAssignment
    trace: ContractionTrace


def _first_pair(mask: np.ndarray, values: np.ndarray, target) -> tuple[int, int]:
    hits = np.argwhere(mask & (values == target))
    return tuple(hits[0].tolist())


def ec_solve(W: WeightMatrix) -> ContractionResult:
    """Contract the minimum-weight pair until two super-vertices remain.

    Parallel edges are merged by adding their weights. The two final
    classes are the sides of the cut and the last remaining edge weight is
    the cut weight; that value is checked against direct evaluation.
    """
    n = W.n
    if n < 2:
        raise GraphError("edge contraction needs at least two vertices")
    work = W.working_copy()
    active = np.ones(n, dtype=bool)
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    label = np.arange(n)
    trace = ContractionTrace()
    while active.sum() > 2:
        alive = upper & np.outer(active, active)
        best = work[alive].min()
        i, j = _first_pair(alive, work, best)
        weight = work[i, j]
        work[i] += work[j]
        work[:, i] = work[i]
        work[i, i] = 0
        work[j] = 0
        work[:, j] = 0
        active[j] = False
        label[label == j] = i
        trace.append(TraceStep(i + 1, j + 1, W.to_python(weight), 1, j + 1, i + 1))
    u, d = np.flatnonzero(active).tolist()
    z = np.where(label == label[u], 1, -1)
    final = W.to_python(work[u, d])
    recomputed = cut_weight(W, z)
    if W.is_integer and final != recomputed:
        raise AssertionError(f"EC final edge {final} disagrees with cut weight {recomputed}")
    return ContractionResult(CutAssignment(z, recomputed), trace)


def dec_solve(W: WeightMatrix, direction: str = "max-total") -> ContractionResult:
    """Differencing edge contraction.

    Repeatedly takes the largest positive-weight pair and merges one
    endpoint into the other with ``w[s, k] -= w[r, k]``. ``direction``
    picks the survivor: the smaller or larger index, or whichever leaves the
    larger total active weight (smaller index on a tie). Stops when no
    positive pair remains. A vertex's side is the parity of minus signs on
    its path to the root of its super-vertex; roots go to the +1 side.
    """
    if direction not in DEC_DIRECTIONS:
        raise ValueError(f"direction must be one of {DEC_DIRECTIONS}")
    n = W.n
    work = W.working_copy()
    active = np.ones(n, dtype=bool)
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    parent = list(range(n))
    trace = ContractionTrace()
    while active.sum() > 1:
        alive = upper & np.outer(active, active)
        best = work[alive].max()
        if not W.is_positive(best):
            break
        i, j = _first_pair(alive, work, best)
        weight = work[i, j]
        if direction == "keep-smaller":
            survivor, removed = i, j
        elif direction == "keep-larger":
            survivor, removed = j, i
        else:
            # Totals of the two outcomes differ by twice this sum.
            others = active.copy()
            others[[i, j]] = False
            gap = (work[i, others] - work[j, others]).sum()
            survivor, removed = (j, i) if gap < 0 else (i, j)
        work[survivor] -= work[removed]
        work[:, survivor] = work[survivor]
        work[survivor, survivor] = 0
        work[removed] = 0
        work[:, removed] = 0
        active[removed] = False
        parent[removed] = survivor
        trace.append(TraceStep(i + 1, j + 1, W.to_python(weight), -1, removed + 1, survivor + 1))

    z = np.ones(n, dtype=np.int64)
    for v in range(n):
        u, minus = v, 0
        while parent[u] != u:
            u = parent[u]
            minus += 1
        z[v] = 1 if minus % 2 == 0 else -1
    return ContractionResult(CutAssignment(z, cut_weight(W, z)), trace)


def _sg_assign(wu, wd) -> int:
    # Verbatim rule: strictly lighter towards U joins U, everything else D.
    return 1 if wu < wd else -1


def sg_solve(W: WeightMatrix, order: Optional[Sequence[int]] = None) -> CutAssignment:
    """Sahni-Gonzalez: visit vertices in ``order`` (1-based, default 1..n)."""
    n = W.n
    order = list(range(1, n + 1)) if order is None else [int(v) for v in order]
    if sorted(order) != list(range(1, n + 1)):
        raise GraphError("order must be a permutation of 1..n")
    z = np.zeros(n, dtype=np.int64)
    to_up = np.zeros(n, dtype=W.w.dtype)
    to_down = np.zeros(n, dtype=W.w.dtype)
    for v in order:
        i = v - 1
        side = _sg_assign(to_up[i], to_down[i])
        z[i] = side
        if side == 1:
            to_up += W.w[i]
        else:
            to_down += W.w[i]
    return CutAssignment(z, cut_weight(W, z))


def sg3_solve(W: WeightMatrix) -> CutAssignment:
    """SG3: always place next the unassigned vertex with the largest
    ``|w(i, U) - w(i, D)|`` (smallest index on ties)."""
    n = W.n
    z = np.zeros(n, dtype=np.int64)
    to_up = np.zeros(n, dtype=W.w.dtype)
    to_down = np.zeros(n, dtype=W.w.dtype)
    for _ in range(n):
        score = np.abs(to_up - to_down)
        score[z != 0] = -1
        i = int(np.argmax(score))
        side = _sg_assign(to_up[i], to_down[i])
        z[i] = side
        if side == 1:
            to_up += W.w[i]
        else:
            to_down += W.w[i]
    return CutAssignment(z, cut_weight(W, z))
