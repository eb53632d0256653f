"""Hot integer kernels: height-extrema counting over direction batches and
Kauffman-bracket state enumeration.

Each kernel has two interchangeable implementations: a numba ``@njit`` version
and a vectorized pure-numpy fallback.  Setting ``STICKCERT_NUMBA=0`` in the
environment selects the numpy path at import time; the default compiles the
numba kernels (falling back silently if numba is unavailable).  Both paths
work in int64 and are exact; callers are responsible for the documented
magnitude bounds (|height| < 2**62, states < 2**62).

The deterministic counter-based RNG (splitmix64-style) also lives here so the
geometry module and the benchmark share one implementation.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("STICKCERT_NUMBA", "1") != "0"

_U64 = np.uint64
_GOLD = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_STREAM_A = 0xD1342543DE82EF95
_STREAM_B = 0xAF251AF3B0F025B5
_STREAM_C = 0x9E6C63D0676A9A99
_MASK = 0xFFFFFFFFFFFFFFFF


def mix64(x: int) -> int:
    """Scalar splitmix64 finalizer over Python ints (64-bit wraparound)."""
    z = (x + _GOLD) & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def _mix64_np(x: np.ndarray) -> np.ndarray:
    z = (x + _U64(_GOLD)).astype(np.uint64)
    z ^= z >> _U64(30)
    z *= _U64(_MIX1)
    z ^= z >> _U64(27)
    z *= _U64(_MIX2)
    z ^= z >> _U64(31)
    return z


def direction_batch(seed: int, indices: np.ndarray, draw: int, bound: int) -> np.ndarray:
    """Integer directions in [-bound, bound]^3 for per-sample streams.

    Sample ``i`` uses its own stream; ``draw`` is the redraw counter within
    the stream, so rejection resampling is reproducible regardless of
    batching or evaluation order.
    """
    idx = np.asarray(indices, dtype=np.uint64)
    base = _mix64_np(_U64(mix64(seed)) ^ (idx * _U64(_STREAM_A)))
    base ^= _U64((draw * _STREAM_B) & _MASK)
    span = _U64(2 * bound + 1)
    comps = []
    for comp in range(3):
        h = _mix64_np(base ^ _U64((comp * _STREAM_C) & _MASK))
        comps.append((h % span).astype(np.int64) - bound)
    return np.stack(comps, axis=1)


def direction_single(seed: int, index: int, draw: int, bound: int) -> tuple[int, int, int]:
    """Scalar twin of direction_batch (same values, Python ints)."""
    base = mix64(mix64(seed) ^ ((index * _STREAM_A) & _MASK))
    base ^= (draw * _STREAM_B) & _MASK
    span = 2 * bound + 1
    return tuple(
        mix64(base ^ ((comp * _STREAM_C) & _MASK)) % span - bound for comp in range(3)
    )


# ---------------------------------------------------------------------------
# local-maxima counting


def _maxima_counts_numpy(verts: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Count strict local maxima of heights per direction; -1 marks ties."""
    h = dirs @ verts.T  # (m, n) exact in int64 under caller's bounds
    nxt = np.roll(h, -1, axis=1)
    prv = np.roll(h, 1, axis=1)
    tie = np.any(h == nxt, axis=1)
    counts = np.sum((h > nxt) & (h > prv), axis=1).astype(np.int64)
    counts[tie] = -1
    return counts


def _build_numba_kernels():
    from numba import njit

    @njit("int64[:](int64[:, :], int64[:, :])", cache=True)
    def maxima_counts(verts, dirs):
        m = dirs.shape[0]
        n = verts.shape[0]
        out = np.empty(m, dtype=np.int64)
        h = np.empty(n, dtype=np.int64)
        for r in range(m):
            dx, dy, dz = dirs[r, 0], dirs[r, 1], dirs[r, 2]
            tie = False
            for i in range(n):
                h[i] = dx * verts[i, 0] + dy * verts[i, 1] + dz * verts[i, 2]
            for i in range(n):
                if h[i] == h[(i + 1) % n]:
                    tie = True
                    break
            if tie:
                out[r] = -1
                continue
            cnt = 0
            for i in range(n):
                if h[i] > h[i - 1] and h[i] > h[(i + 1) % n]:
                    cnt += 1
            out[r] = cnt
        return out

    @njit("int64[:, :](int64[:, :])", cache=True)
    def bracket_counts(slots):
        c = slots.shape[0]
        nodes = 2 * c
        counts = np.zeros((c + 1, c + 2), dtype=np.int64)
        parent = np.empty(nodes, dtype=np.int64)
        for state in range(1 << c):
            for i in range(nodes):
                parent[i] = i
            a_cnt = 0
            for k in range(c):
                p, q, r, s = slots[k, 0], slots[k, 1], slots[k, 2], slots[k, 3]
                if (state >> k) & 1:
                    a_cnt += 1
                    u1, v1, u2, v2 = p, q, r, s
                else:
                    u1, v1, u2, v2 = p, s, q, r
                x = u1
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                y = v1
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                if x < y:
                    parent[y] = x
                else:
                    parent[x] = y
                x = u2
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                y = v2
                while parent[y] != y:
                    parent[y] = parent[parent[y]]
                    y = parent[y]
                if x < y:
                    parent[y] = x
                else:
                    parent[x] = y
            loops = 0
            for i in range(nodes):
                if parent[i] == i:
                    loops += 1
            counts[a_cnt, loops] += 1
        return counts

    return maxima_counts, bracket_counts


def _bracket_counts_numpy(slots: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """State-sum loop counts via batched vectorized union-find."""
    c = slots.shape[0]
    nodes = 2 * c
    counts = np.zeros((c + 1, c + 2), dtype=np.int64)
    total = 1 << c
    states_done = 0
    while states_done < total:
        m = min(chunk, total - states_done)
        states = np.arange(states_done, states_done + m, dtype=np.int64)
        parent = np.broadcast_to(np.arange(nodes, dtype=np.int64), (m, nodes)).copy()

        def root(col):
            r = col
            while True:
                nxt = np.take_along_axis(parent, r[:, None], axis=1)[:, 0]
                if np.array_equal(nxt, r):
                    return r
                r = nxt

        for k in range(c):
            a_bit = (states >> k) & 1
            p, q, r_, s = (int(slots[k, j]) for j in range(4))
            first = np.where(a_bit == 1, q, s)
            second_a = np.where(a_bit == 1, r_, q)
            second_b = np.where(a_bit == 1, s, r_)
            for u, v in ((np.full(m, p, dtype=np.int64), first), (second_a, second_b)):
                ru, rv = root(u), root(v)
                lo = np.minimum(ru, rv)
                hi = np.maximum(ru, rv)
                np.put_along_axis(parent, hi[:, None], lo[:, None], axis=1)
        # full compression, then count fixed points per row
        while True:
            nxt = np.take_along_axis(parent, parent, axis=1)
            if np.array_equal(nxt, parent):
                break
            parent = nxt
        loops = np.sum(parent == np.arange(nodes, dtype=np.int64), axis=1)
        a_cnt = np.zeros(m, dtype=np.int64)
        for k in range(c):
            a_cnt += (states >> k) & 1
        np.add.at(counts, (a_cnt, loops), 1)
        states_done += m
    return counts


if USE_NUMBA:
    try:
        maxima_counts, bracket_counts = _build_numba_kernels()
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        maxima_counts, bracket_counts = _maxima_counts_numpy, _bracket_counts_numpy
        BACKEND = "numpy"
else:
    maxima_counts, bracket_counts = _maxima_counts_numpy, _bracket_counts_numpy
    BACKEND = "numpy"
