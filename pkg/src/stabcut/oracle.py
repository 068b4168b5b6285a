"""Exhaustive Max-Cut for small graphs.

Vertex 1 is pinned to +1 (a cut and its mirror image weigh the same), so
2**(n-1) assignments are examined. The fast path splits the free vertices
into a low block, evaluated all at once as numpy vectors, and a high block
walked in Gray-code order so each step flips one vertex and updates the
vectors in place.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .graph import CutAssignment, WeightMatrix, cut_weight

DEFAULT_MAX_N = 24
NAIVE_MAX_N = 12
_LOW_BITS = 14


class OracleSizeError(ValueError):
    """Graph too large for exhaustive search."""


@dataclass
class OracleResult:
    optimal_weight: object
    witness: CutAssignment
    enumerated: int


def brute_force_naive(W: WeightMatrix, max_n: int = NAIVE_MAX_N) -> OracleResult:
    """Reference enumeration, recomputing every cut from scratch."""
    n = W.n
    if n > max_n:
        raise OracleSizeError(f"n={n} exceeds limit {max_n} for naive enumeration")
    best, best_z, count = None, None, 0
    # product over (-1, +1) yields assignments in lexicographic order.
    for rest in itertools.product((-1, 1), repeat=n - 1):
        z = np.array((1,) + rest, dtype=np.int64)
        count += 1
        value = cut_weight(W, z)
        if best is None or value > best:
            best, best_z = value, z
    return OracleResult(best, CutAssignment(best_z, best), count)


def brute_force(W: WeightMatrix, max_n: int = DEFAULT_MAX_N) -> OracleResult:
    """Optimal cut weight and the lexicographically smallest optimal labelling."""
    n = W.n
    if n > max_n:
        raise OracleSizeError(f"n={n} exceeds exhaustive-search limit {max_n}")
    if n == 1:
        z = np.ones(1, dtype=np.int64)
        return OracleResult(W.to_python(0), CutAssignment(z, W.to_python(0)), 1)

    w = W.w
    dtype = w.dtype
    free = n - 1
    n_low = min(free, _LOW_BITS)
    n_high = free - n_low
    low = list(range(1, 1 + n_low))
    high = list(range(1 + n_low, n))

    # Rows of zl: every labelling of vertex 0 (fixed +1) and the low block.
    # Bit b of the row index set means vertex low[n_low - 1 - b] is +1, so
    # row order matches lexicographic order on the low block.
    idx = np.arange(1 << n_low)
    zl = np.empty((1 << n_low, 1 + n_low), dtype=np.int64)
    zl[:, 0] = 1
    for pos in range(n_low):
        bit = n_low - 1 - pos
        zl[:, 1 + pos] = np.where((idx >> bit) & 1, 1, -1)
    block = [0] + low
    wl = w[np.ix_(block, block)]
    # Cut inside {0} + low: (sum_{i<j} w_ij - sum_{i<j} w_ij z_i z_j) / 2.
    half = (lambda x: x // 2) if W.is_integer else (lambda x: x / 2)
    zl_w = zl.astype(dtype)
    energy = np.einsum("ri,ij,rj->r", zl_w, wl, zl_w)
    cut_low = half(np.triu(wl, 1).sum() - half(energy))

    # side[v] = sum_{k in block} w_vk z_k for each high vertex v.
    side = [zl_w @ w[v, block] for v in high]
    row_low = [w[v, block].sum() for v in high]
    wh = w[np.ix_(high, high)]

    zh = np.ones(n_high, dtype=np.int64)
    # Cross term with all high vertices at +1: sum_v (row_low[v] - side[v]) / 2.
    twice_cross = sum((r - s for r, s in zip(row_low, side)), np.zeros(1 << n_low, dtype=dtype))
    cut_high = 0
    high_key = (1 << n_high) - 1  # all +1

    best = None
    best_key = None

    def consider(values, high_key):
        nonlocal best, best_key
        top = values.max()
        # Low-block row index grows with the lexicographic key.
        first = int(np.flatnonzero(values == top)[0])
        key = (first << n_high) | high_key
        if best is None or top > best or (top == best and key < best_key):
            best, best_key = top, key

    consider(cut_low + half(twice_cross) + cut_high, high_key)
    for step in range(1, 1 << n_high):
        # Gray code: flip the vertex at the lowest set bit of the step count.
        t = (step & -step).bit_length() - 1
        v = n_high - 1 - t
        old = zh[v]
        # Flipping v changes the cut inside the high block by sum_k w_vk z_v z_k.
        cut_high += old * (wh[v] @ zh)
        zh[v] = -old
        twice_cross = twice_cross + 2 * old * side[v]
        high_key ^= 1 << t
        consider(cut_low + half(twice_cross) + cut_high, high_key)

    low_row = best_key >> n_high
    hkey = best_key & ((1 << n_high) - 1)
    z = np.empty(n, dtype=np.int64)
    z[: 1 + n_low] = zl[low_row]
    for pos in range(n_high):
        z[1 + n_low + pos] = 1 if (hkey >> (n_high - 1 - pos)) & 1 else -1
    value = cut_weight(W, z)
    return OracleResult(value, CutAssignment(z, value), 1 << free)
