"""Hot counting kernels with two interchangeable backends.

Everything in here is integer-only bitmask work: scanning all vertex
subsets of a small graph (as masks 0..2^n-1) for counting violations, and
drawing uniform edge indices for the Monte Carlo sampler.  Each kernel has
a numba ``@njit`` implementation and a vectorized pure-numpy fallback; the
active backend is chosen once at import time from the environment variable
``SPARSITY_EF_BACKEND``:

    SPARSITY_EF_BACKEND=numba   force the jitted kernels (default if numba
                                imports cleanly)
    SPARSITY_EF_BACKEND=numpy   force the pure-numpy fallback

Both backends are exact (int64/uint64 arithmetic, no floats) and return
bit-identical results; ``benchmarks/bench_kernels.py`` compares their
speed.

Random draws use a counter-based splitmix64 stream: draw ``t`` of ``seed``
is ``mix64(seed + (t+1)*GOLDEN) mod m``.  The same stream is implemented
three times (pure python here, vectorized numpy, numba loop) and the test
suite pins them to each other.  The modulo introduces a bias of order
m * 2^-64, far below anything observable at desk scale.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix_draw(seed: int, t: int, m: int) -> int:
    """Draw ``t`` of the documented stream: a uniform index in [0, m)."""
    z = (seed + (t + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z = (z ^ (z >> 31)) & _MASK64
    return z % m


# ---------------------------------------------------------------------------
# pure-numpy backend


def _popcounts(masks: np.ndarray, n: int) -> np.ndarray:
    pc = np.zeros(masks.shape, dtype=np.int64)
    for i in range(n):
        pc += (masks >> i) & 1
    return pc


def _edge_in_counts(masks: np.ndarray, eu: np.ndarray, ev: np.ndarray) -> np.ndarray:
    """Per mask X, the number of listed edges with both endpoints in X."""
    cnt = np.zeros(masks.shape, dtype=np.int64)
    for j in range(len(eu)):
        cnt += (masks >> eu[j]) & (masks >> ev[j]) & 1
    return cnt


def count_violation_numpy(eu: np.ndarray, ev: np.ndarray, n: int, k: int, ell: int) -> int:
    masks = np.arange(1 << n, dtype=np.int64)
    pc = _popcounts(masks, n)
    cnt = _edge_in_counts(masks, eu, ev)
    rhs = np.maximum(k * pc - ell, 0)
    bad = (pc >= 2) & (cnt > rhs)
    if not bad.any():
        return -1
    return int(np.argmax(bad))


def hakimi_violation_numpy(eu: np.ndarray, ev: np.ndarray, m: np.ndarray, n: int) -> int:
    masks = np.arange(1 << n, dtype=np.int64)
    cnt = _edge_in_counts(masks, eu, ev)
    msum = np.zeros(masks.shape, dtype=np.int64)
    for v in range(n):
        msum += ((masks >> v) & 1) * m[v]
    bad = cnt > msum
    if not bad.any():
        return -1
    return int(np.argmax(bad))


_MC_CHUNK = 1 << 20


def mc_hits_numpy(entering: np.ndarray, samples: int, seed: int) -> int:
    m = np.uint64(len(entering))
    s = np.uint64(seed & _MASK64)
    hits = 0
    start = 0
    while start < samples:
        stop = min(start + _MC_CHUNK, samples)
        t = np.arange(start + 1, stop + 1, dtype=np.uint64)
        z = s + t * np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
        idx = (z % m).astype(np.int64)
        hits += int(entering[idx].sum())
        start = stop
    return hits


# ---------------------------------------------------------------------------
# numba backend

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True)
    def count_violation_numba(eu, ev, n, k, ell):  # pragma: no cover - jitted
        nedges = len(eu)
        for mask in range(1, 1 << n):
            pc = 0
            for i in range(n):
                pc += (mask >> i) & 1
            if pc < 2:
                continue
            cnt = 0
            for j in range(nedges):
                if (mask >> eu[j]) & (mask >> ev[j]) & 1:
                    cnt += 1
            rhs = k * pc - ell
            if rhs < 0:
                rhs = 0
            if cnt > rhs:
                return mask
        return -1

    @njit(cache=True)
    def hakimi_violation_numba(eu, ev, m, n):  # pragma: no cover - jitted
        nedges = len(eu)
        for mask in range(1, 1 << n):
            cnt = 0
            for j in range(nedges):
                if (mask >> eu[j]) & (mask >> ev[j]) & 1:
                    cnt += 1
            msum = 0
            for v in range(n):
                if (mask >> v) & 1:
                    msum += m[v]
            if cnt > msum:
                return mask
        return -1

    @njit(cache=True)
    def _mc_hits_jit(entering, samples, seed):  # pragma: no cover - jitted
        g = np.uint64(_GOLDEN)
        m1 = np.uint64(_MIX1)
        m2 = np.uint64(_MIX2)
        m = np.uint64(len(entering))
        hits = 0
        for t in range(samples):
            z = seed + np.uint64(t + 1) * g
            z = (z ^ (z >> np.uint64(30))) * m1
            z = (z ^ (z >> np.uint64(27))) * m2
            z = z ^ (z >> np.uint64(31))
            if entering[np.int64(z % m)]:
                hits += 1
        return hits

    def mc_hits_numba(entering: np.ndarray, samples: int, seed: int) -> int:
        return int(_mc_hits_jit(entering, samples, np.uint64(seed & _MASK64)))


def _resolve_backend() -> str:
    requested = os.environ.get("SPARSITY_EF_BACKEND", "").strip().lower()
    if requested not in ("", "numba", "numpy"):
        raise ValueError(
            f"SPARSITY_EF_BACKEND={requested!r}: expected 'numba' or 'numpy'"
        )
    if requested == "numpy":
        return "numpy"
    if requested == "numba" and not HAVE_NUMBA:
        warnings.warn("numba requested but not importable; using numpy backend")
        return "numpy"
    return "numba" if HAVE_NUMBA else "numpy"


BACKEND = _resolve_backend()

if BACKEND == "numba":
    count_violation = count_violation_numba
    hakimi_violation = hakimi_violation_numba
    mc_hits = mc_hits_numba
else:
    count_violation = count_violation_numpy
    hakimi_violation = hakimi_violation_numpy
    mc_hits = mc_hits_numpy


def as_edge_arrays(edges) -> tuple[np.ndarray, np.ndarray]:
    """Split endpoint pairs into the int64 arrays the kernels take."""
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    return eu, ev
