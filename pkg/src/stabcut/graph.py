"""Dense complete-graph weights and cut evaluation.

Every solver in the package works on a :class:`WeightMatrix`: a symmetric
n x n array with zero diagonal. Pairs that are not listed in the input are
ordinary edges of weight 0. Vertices are 1-based in every public function
that takes vertex labels and 0-based in the underlying arrays.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

INTEGER = "integer"
REAL = "real"

# Contraction entries are signed sums of distinct original weights, so their
# magnitude never exceeds the total absolute weight. Keeping that below 2**62
# leaves headroom for the pairwise sums formed when totals are compared.
_INT_LIMIT = 2**62

DEFAULT_RELATIVE_EPS = 1e-9


class GraphError(ValueError):
    """Malformed graph input."""


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric edge weights of a complete graph.

    ``w`` is int64 in integer mode and float64 in real mode. The array is
    marked read-only; solvers copy it before contracting.
    """

    w: np.ndarray
    mode: str = INTEGER
    names: Optional[tuple[str, ...]] = None
    epsilon: float = 0.0

    def __post_init__(self):
        w = self.w
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise GraphError(f"weight array must be square, got shape {w.shape}")
        if w.shape[0] < 1:
            raise GraphError("graph needs at least one vertex")
        if not np.array_equal(w, w.T):
            raise GraphError("weight array is not symmetric")
        if np.any(np.diagonal(w) != 0):
            raise GraphError("diagonal must be zero")
        if self.mode not in (INTEGER, REAL):
            raise GraphError(f"unknown mode {self.mode!r}")
        if self.names is not None and len(self.names) != w.shape[0]:
            raise GraphError("names must have one entry per vertex")
        w.setflags(write=False)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @property
    def is_integer(self) -> bool:
        return self.mode == INTEGER

    def is_zero(self, value) -> bool:
        """Zero test used wherever an algorithm compares a weight to 0."""
        if self.is_integer:
            return value == 0
        return abs(value) <= self.epsilon

    def is_positive(self, value) -> bool:
        if self.is_integer:
            return value > 0
        return value > self.epsilon

    def working_copy(self) -> np.ndarray:
        return np.array(self.w, copy=True)

    def to_python(self, value):
        """Convert a numpy scalar into a plain int or float."""
        return int(value) if self.is_integer else float(value)

    def with_epsilon(self, epsilon: float) -> "WeightMatrix":
        if self.is_integer:
            return self
        return WeightMatrix(self.w, REAL, self.names, float(epsilon))


@dataclass
class CutAssignment:
    """Per-vertex side labels (+1 or -1) and the resulting cut weight."""

    z: np.ndarray
    cut_weight: object = None

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=np.int64)
        if self.z.ndim != 1:
            raise GraphError("assignment must be one-dimensional")
        if not np.all((self.z == 1) | (self.z == -1)):
            raise GraphError("assignment entries must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.z)

    @property
    def up(self) -> list[int]:
        """1-based vertices labelled +1."""
        return [int(i) + 1 for i in np.flatnonzero(self.z == 1)]

    @property
    def down(self) -> list[int]:
        """1-based vertices labelled -1."""
        return [int(i) + 1 for i in np.flatnonzero(self.z == -1)]

    def partition(self) -> tuple[frozenset, frozenset]:
        return frozenset(self.up), frozenset(self.down)

    def same_cut(self, other: "CutAssignment") -> bool:
        """True when both assignments induce the same unordered partition."""
        return bool(np.array_equal(self.z, other.z) or np.array_equal(self.z, -other.z))


def _check_int_range(w: np.ndarray) -> None:
    total_abs = sum(abs(int(x)) for x in w[np.triu_indices(w.shape[0], 1)].tolist())
    if total_abs >= _INT_LIMIT:
        raise OverflowError(
            f"total absolute weight {total_abs} is too large for exact 64-bit arithmetic"
        )


def _default_eps(w: np.ndarray) -> float:
    return DEFAULT_RELATIVE_EPS * float(np.max(np.abs(w))) if w.size else 0.0


def from_array(
    array, names: Optional[Sequence[str]] = None, epsilon: Optional[float] = None
) -> WeightMatrix:
    """Wrap a square symmetric array, choosing integer mode when every entry is integral."""
    a = np.asarray(array)
    if a.dtype == object:
        values = a.tolist()
        if all(isinstance(x, numbers.Integral) for row in values for x in row):
            ints = [[int(x) for x in row] for row in values]
            _check_int_range(np.array(ints, dtype=object))
            a = np.array(ints, dtype=np.int64)
        else:
            a = a.astype(np.float64)
    if np.issubdtype(a.dtype, np.bool_):
        a = a.astype(np.int64)
    if np.issubdtype(a.dtype, np.integer):
        _check_int_range(a)
        w = a.astype(np.int64, copy=True)
        mode = INTEGER
    elif np.issubdtype(a.dtype, np.floating):
        w = a.astype(np.float64, copy=True)
        if not np.all(np.isfinite(w)):
            raise GraphError("weights must be finite")
        mode = REAL
    else:
        raise GraphError(f"unsupported weight dtype {a.dtype}")
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise GraphError(f"weight array must be square, got shape {w.shape}")
    eps = 0.0
    if mode == REAL:
        eps = _default_eps(w) if epsilon is None else float(epsilon)
    return WeightMatrix(w, mode, tuple(names) if names is not None else None, eps)


def build_matrix(
    n: int,
    entries: Iterable[tuple[int, int, object]],
    names: Optional[Sequence[str]] = None,
    epsilon: Optional[float] = None,
) -> WeightMatrix:
    """Build a complete graph on vertices 1..n from ``(i, j, weight)`` triples.

    Each unordered pair may appear once; ``(j, i)`` after ``(i, j)`` is a
    duplicate. Unlisted pairs get weight 0. The matrix is in integer mode iff
    every listed weight is an integer; floats with an integral value still
    count as real.
    """
    if n < 1:
        raise GraphError(f"vertex count must be at least 1, got {n}")
    entries = list(entries)
    seen = set()
    integral = True
    for i, j, wt in entries:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphError(f"duplicate edge ({i}, {j})")
        seen.add(key)
        if not isinstance(wt, numbers.Integral):
            integral = False
    if integral:
        w = np.zeros((n, n), dtype=object)
    else:
        w = np.zeros((n, n), dtype=np.float64)
    for i, j, wt in entries:
        w[i - 1, j - 1] = w[j - 1, i - 1] = int(wt) if integral else float(wt)
    return from_array(w, names=names, epsilon=epsilon)


def _check_assignment(W: WeightMatrix, z) -> np.ndarray:
    z = np.asarray(z)
    if z.shape != (W.n,):
        raise GraphError(f"assignment length {z.shape[0] if z.ndim else 0} does not match n={W.n}")
    if not np.all((z == 1) | (z == -1)):
        raise GraphError("assignment entries must be +1 or -1")
    return z.astype(np.int64)


def cut_weight(W: WeightMatrix, z):
    """Sum of weights of edges whose endpoints carry opposite labels.

    Equal to ``1/2 * sum_{i<j} w_ij (1 - z_i z_j)``. Exact in integer mode.
    """
    z = _check_assignment(W, z)
    crossing = np.not_equal.outer(z, z)
    return W.to_python(np.triu(np.where(crossing, W.w, 0), 1).sum())


def total_weight(W: WeightMatrix):
    """Sum of all edge weights, the denominator of cut ratios."""
    return W.to_python(np.triu(W.w, 1).sum())


def side_weights(W: WeightMatrix, i: int, U: Iterable[int], D: Iterable[int]):
    """Return ``(w(i, U), w(i, D))`` for an unassigned vertex ``i``.

    Vertices are 1-based. Empty sides contribute 0.
    """
    U, D = set(U), set(D)
    if U & D:
        raise GraphError("U and D must be disjoint")
    if i in U or i in D:
        raise GraphError(f"vertex {i} is already assigned")
    for v in (i, *U, *D):
        if not 1 <= v <= W.n:
            raise GraphError(f"vertex {v} out of range 1..{W.n}")
    row = W.w[i - 1]
    wu = row[[u - 1 for u in sorted(U)]].sum() if U else 0
    wd = row[[d - 1 for d in sorted(D)]].sum() if D else 0
    return W.to_python(wu), W.to_python(wd)


@dataclass
class TraceStep:
    """One contraction: the picked pair, its weight at pick time and its sign."""

    i: int
    j: int
    weight: object
    sign: int
    removed: int
    survivor: int

    def as_line(self, step: int) -> str:
        return f"{step} {self.i} {self.j} {self.weight} {self.sign:+d} {self.removed} {self.survivor}"


@dataclass
class ContractionTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def append(self, step: TraceStep) -> None:
        self.steps.append(step)

    def to_text(self) -> str:
        """One line per step: ``step i j weight sign removed survivor``."""
        lines = ["# step i j weight sign removed survivor"]
        lines += [s.as_line(k) for k, s in enumerate(self.steps, 1)]
        return "\n".join(lines) + "\n"
