#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy fallbacks.

The two backends are bit-identical (the test suite enforces that); this
script only measures speed, on the workloads that dominate the package's
runtime: full vertex-subset scans for sparsity counting and in-degree
feasibility, and bulk Monte Carlo draws.

    python benchmarks/bench_kernels.py [--n 14] [--mc-samples 1000000] [--repeat 5]
"""

import argparse
import itertools
import random
import time

import numpy as np

from sparsity_ef import _kernels
from sparsity_ef._kernels import (
    HAVE_NUMBA,
    as_edge_arrays,
    count_violation_numpy,
    hakimi_violation_numpy,
    mc_hits_numpy,
)


def _timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench(name, numpy_fn, numba_fn, repeat):
    t_np, r_np = _timeit(numpy_fn, repeat)
    if numba_fn is None:
        print(f"{name:<18} numpy {t_np * 1e3:9.3f} ms   numba      n/a")
        return
    numba_fn()  # trigger JIT compilation outside the timed region
    t_nb, r_nb = _timeit(numba_fn, repeat)
    if r_np != r_nb:
        raise AssertionError(f"{name}: backends disagree ({r_np} vs {r_nb})")
    print(
        f"{name:<18} numpy {t_np * 1e3:9.3f} ms   numba {t_nb * 1e3:9.3f} ms"
        f"   speedup {t_np / t_nb:6.1f}x"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=14, help="vertex count for subset scans")
    parser.add_argument("--edge-prob", type=float, default=0.5)
    parser.add_argument("--mc-samples", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    edges = [
        e
        for e in itertools.combinations(range(args.n), 2)
        if rng.random() < args.edge_prob
    ]
    eu, ev = as_edge_arrays(edges)
    targets = np.array([rng.randint(0, 2) for _ in range(args.n)], dtype=np.int64)
    entering = np.array(
        [rng.randint(0, 1) for _ in range(max(len(edges), 1))], dtype=np.uint8
    )

    print(
        f"n={args.n} ({len(edges)} edges, {1 << args.n} subsets per scan), "
        f"mc samples={args.mc_samples}, repeat={args.repeat}, "
        f"active backend={_kernels.BACKEND}"
    )
    bench(
        "count scan",
        lambda: count_violation_numpy(eu, ev, args.n, 2, 3),
        (lambda: _kernels.count_violation_numba(eu, ev, args.n, 2, 3)) if HAVE_NUMBA else None,
        args.repeat,
    )
    bench(
        "hakimi scan",
        lambda: hakimi_violation_numpy(eu, ev, targets, args.n),
        (lambda: _kernels.hakimi_violation_numba(eu, ev, targets, args.n)) if HAVE_NUMBA else None,
        args.repeat,
    )
    bench(
        "mc draws",
        lambda: mc_hits_numpy(entering, args.mc_samples, 12345),
        (lambda: _kernels.mc_hits_numba(entering, args.mc_samples, 12345)) if HAVE_NUMBA else None,
        args.repeat,
    )


if __name__ == "__main__":
    main()
