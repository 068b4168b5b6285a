"""Greedy signed edge contraction ("stabilizer" heuristic) for Max-Cut.

Each step picks the active pair with the largest absolute weight and fixes
the relative sign of its endpoints to ``-sign(w)``: a negative edge puts both
ends on the same side, a positive edge puts them on opposite sides. One
endpoint is then folded into the other with ``w[s, k] += sign * w[r, k]``.
The picked pairs form a forest; labels are recovered as products of edge
signs along tree paths.

Two engines produce identical output. ``naive`` rescans the active
submatrix every step (O(n^3) overall). ``heap`` keeps a priority queue of
candidate pairs and discards stale entries lazily (O(n^2 log n)).
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .graph import (
    ContractionTrace,
    CutAssignment,
    GraphError,
    TraceStep,
    WeightMatrix,
    cut_weight,
)

TIE_BREAKS = ("lex", "revlex")
SURVIVOR_RULES = ("small", "large")
ENGINES = ("heap", "naive")


class ForestError(RuntimeError):
    """The signed edge set is not a forest."""


@dataclass(frozen=True)
class SignedForestEdge:
    i: int
    j: int
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError(f"edge sign must be +1 or -1, got {self.sign}")
        if self.i == self.j:
            raise ValueError("forest edge endpoints must differ")


@dataclass
class StabilizerForest:
    n: int
    edges: list[SignedForestEdge] = field(default_factory=list)

    def is_acyclic(self) -> bool:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(e.i), find(e.j)
            if a == b:
                return False
            parent[a] = b
        return True

    def components(self) -> list[list[int]]:
        """Vertex sets of the trees, each sorted, ordered by smallest vertex."""
        adj = _adjacency(self)
        seen = [False] * (self.n + 1)
        trees = []
        for root in range(1, self.n + 1):
            if seen[root]:
                continue
            seen[root] = True
            tree, queue = [root], deque([root])
            while queue:
                u = queue.popleft()
                for v, _ in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        tree.append(v)
                        queue.append(v)
            trees.append(sorted(tree))
        return trees


@dataclass(frozen=True)
class StabilizerPolicy:
    """Deterministic choices the greedy rule leaves open.

    ``tie_break`` orders equal-magnitude pairs by (i, j) ascending (``lex``)
    or descending (``revlex``), where a contracted vertex is labelled by the
    smallest original vertex merged into it. That labelling does not depend
    on ``survivor``, which only decides which endpoint keeps its row, so
    both survivor rules pick the same sequence of pairs. ``epsilon``
    overrides the zero threshold of a real-valued matrix.
    """

    tie_break: str = "lex"
    survivor: str = "small"
    epsilon: Optional[float] = None
    engine: str = "heap"

    def __post_init__(self):
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"tie_break must be one of {TIE_BREAKS}")
        if self.survivor not in SURVIVOR_RULES:
            raise ValueError(f"survivor must be one of {SURVIVOR_RULES}")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")

    def describe(self) -> str:
        parts = [f"tie_break={self.tie_break}", f"survivor={self.survivor}"]
        if self.epsilon is not None:
            parts.append(f"epsilon={self.epsilon:g}")
        return ";".join(parts)


class StabilizerResult(NamedTuple):
    assignment: CutAssignment
    forest: StabilizerForest
    trace: ContractionTrace


def _fold(work: np.ndarray, removed: int, survivor: int, sign: int) -> None:
    # Inactive rows and columns are kept at zero, so whole-row updates are safe.
    work[survivor] += sign * work[removed]
    work[survivor, survivor] = 0
    work[survivor, removed] = 0
    work[:, survivor] = work[survivor]
    work[removed] = 0
    work[:, removed] = 0


def _choose_survivor(i: int, j: int, rule: str) -> tuple[int, int]:
    """Return ``(removed, survivor)`` for a pair with ``i < j``."""
    return (j, i) if rule == "small" else (i, j)


def contract_step(work: np.ndarray, active, picked, sign: int, survivor_rule: str = "small"):
    """Fold one endpoint of ``picked`` into the other.

    ``work`` is a mutable weight array (0-based storage), ``active`` a
    mutable set of 1-based active vertices, ``picked`` a 1-based pair. The
    removed vertex's row is added to the survivor's with coefficient
    ``sign`` and the removed vertex is deactivated. Returns
    ``(removed, survivor)`` as 1-based labels.
    """
    i, j = sorted(picked)
    if i not in active or j not in active:
        raise GraphError(f"pair ({i}, {j}) has an inactive endpoint")
    wij = work[i - 1, j - 1]
    if wij == 0:
        raise GraphError(f"pair ({i}, {j}) has zero weight")
    if sign != (-1 if wij > 0 else 1):
        raise GraphError(f"sign {sign} does not match weight {wij}")
    if survivor_rule not in SURVIVOR_RULES:
        raise ValueError(f"survivor rule must be one of {SURVIVOR_RULES}")
    removed, survivor = _choose_survivor(i, j, survivor_rule)
    _fold(work, removed - 1, survivor - 1, sign)
    active.discard(removed)
    return removed, survivor


def _adjacency(forest: StabilizerForest):
    adj = [[] for _ in range(forest.n + 1)]
    for e in forest.edges:
        for a, b in ((e.i, e.j), (e.j, e.i)):
            if not 1 <= a <= forest.n:
                raise GraphError(f"forest vertex {a} out of range 1..{forest.n}")
            adj[a].append((b, e.sign))
    return adj


def propagate_signs(forest: StabilizerForest) -> CutAssignment:
    """Label every vertex by the product of edge signs on its path to the tree base.

    The base of each tree is its smallest vertex and gets +1; isolated
    vertices are their own base. The cut weight is left unset.
    """
    if len(forest.edges) > max(forest.n - 1, 0) or not forest.is_acyclic():
        raise ForestError("signed edge set contains a cycle")
    adj = _adjacency(forest)
    z = [0] * (forest.n + 1)
    for base in range(1, forest.n + 1):
        if z[base]:
            continue
        z[base] = 1
        queue = deque([base])
        while queue:
            u = queue.popleft()
            for v, s in adj[u]:
                if not z[v]:
                    z[v] = z[u] * s
                    queue.append(v)
    return CutAssignment(np.array(z[1:], dtype=np.int64))


def _naive_run(W: WeightMatrix, policy: StabilizerPolicy, eps):
    n = W.n
    work = W.working_copy()
    active = np.ones(n, dtype=bool)
    canon = np.arange(n)
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    steps = []
    while active.sum() > 1:
        alive = upper & np.outer(active, active)
        mags = np.where(alive, np.abs(work), -1)
        best = mags.max()
        if best <= eps:
            break
        ties = np.argwhere(mags == best)
        labels = np.sort(canon[ties], axis=1)
        order = np.lexsort((labels[:, 1], labels[:, 0]))
        i, j = ties[order[0] if policy.tie_break == "lex" else order[-1]].tolist()
        weight = work[i, j]
        sign = -1 if weight > 0 else 1
        removed, survivor = _choose_survivor(i, j, policy.survivor)
        _fold(work, removed, survivor, sign)
        active[removed] = False
        canon[survivor] = min(canon[survivor], canon[removed])
        steps.append((i, j, weight, sign, removed, survivor))
    return steps


def _heap_run(W: WeightMatrix, policy: StabilizerPolicy, eps):
    n = W.n
    nn = n * n
    work = W.working_copy()
    lex = policy.tie_break == "lex"
    exact = W.is_integer
    # canon[v]: label of the class stored at row v; rep[c]: row holding class
    # c, or -1 once c has been merged into a class with a smaller label.
    canon = list(range(n))
    rep = list(range(n))

    # Keys sort by descending magnitude, then by the label pair in tie-break
    # order. Integer mode packs both into one Python int for cheap comparisons.
    if exact:
        def key(mag, code):
            return -mag * nn + (code if lex else nn - 1 - code)

        def unpack(k):
            q, c = divmod(k, nn)
            return -q, (c if lex else nn - 1 - c)
    else:
        def key(mag, code):
            return (-mag, code if lex else nn - 1 - code)

        def unpack(k):
            return -k[0], (k[1] if lex else nn - 1 - k[1])

    iu, ju = np.triu_indices(n, 1)
    mags = np.abs(work[iu, ju])
    keep = mags > eps
    codes = (iu * n + ju)[keep].tolist()
    heap = [key(m, c) for m, c in zip(mags[keep].tolist(), codes)]
    heapq.heapify(heap)

    steps = []
    remaining = n
    while heap and remaining > 1:
        mag, code = unpack(heapq.heappop(heap))
        a, b = divmod(code, n)
        i, j = rep[a], rep[b]
        if i < 0 or j < 0:
            continue
        weight = work[i, j]
        if abs(weight) != mag:
            continue
        if i > j:
            i, j = j, i
        sign = -1 if weight > 0 else 1
        removed, survivor = _choose_survivor(i, j, policy.survivor)
        _fold(work, removed, survivor, sign)
        remaining -= 1
        steps.append((i, j, weight, sign, removed, survivor))
        keep_label, drop_label = sorted((canon[survivor], canon[removed]))
        rep[drop_label] = -1
        rep[keep_label] = survivor
        canon[survivor] = keep_label
        row = work[survivor]
        nz = np.flatnonzero(np.abs(row) > eps)
        for k, w in zip(nz.tolist(), np.abs(row[nz]).tolist()):
            c = canon[k]
            heapq.heappush(heap, key(w, keep_label * n + c if keep_label < c else c * n + keep_label))
    return steps


def stabilizer_solve(W: WeightMatrix, policy: Optional[StabilizerPolicy] = None) -> StabilizerResult:
    """Run the stabilizer heuristic on ``W``.

    Stops when every active pair has zero weight (within the real-mode
    threshold) or a single vertex remains, so at most n - 1 steps run.
    """
    policy = policy or StabilizerPolicy()
    if policy.epsilon is not None:
        W = W.with_epsilon(policy.epsilon)
    eps = 0 if W.is_integer else W.epsilon
    run = _heap_run if policy.engine == "heap" else _naive_run
    raw = run(W, policy, eps)

    trace = ContractionTrace()
    forest = StabilizerForest(W.n)
    for i, j, weight, sign, removed, survivor in raw:
        trace.append(TraceStep(i + 1, j + 1, W.to_python(weight), sign, removed + 1, survivor + 1))
        forest.edges.append(SignedForestEdge(i + 1, j + 1, sign))
    assignment = propagate_signs(forest)
    assignment.cut_weight = cut_weight(W, assignment.z)
    return StabilizerResult(assignment, forest, trace)
