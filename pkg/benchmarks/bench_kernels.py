#!/usr/bin/env python3
"""Compare the numba and numpy paths of the monomial kernels.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--repeat N]

Both paths must return identical results; the script checks that before
printing timings.  The first numba call includes JIT compilation and is
reported separately.
"""

import argparse
import os
import time

import numpy as np

from leforge import _kernels


def random_staircase(rng, n, m, top):
    """``m`` random leading exponents in ``n`` variables plus pure powers ``top``."""
    lts = rng.integers(0, top, size=(m, n))
    pure = np.diag(np.full(n, top))
    return np.concatenate([lts, pure]).astype(np.int64)


def cases(seed=0):
    rng = np.random.default_rng(seed)
    for n, m, top in [(2, 6, 30), (3, 10, 14), (3, 20, 20), (4, 12, 9)]:
        yield f"n={n} m={m + n} top={top}", random_staircase(rng, n, m, top), top


def run(path, func):
    os.environ["LEFORGE_DISABLE_NUMBA"] = "1" if path == "numpy" else "0"
    return func()


def timed(func, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = func()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not _kernels.NUMBA_AVAILABLE:
        print("numba is not installed; only the numpy path can run")
        return

    # warm up the JIT once so compile time is not charged to the first case
    os.environ["LEFORGE_DISABLE_NUMBA"] = "0"
    start = time.perf_counter()
    _kernels.degree_histogram([[1, 1]], [2, 2])
    _kernels.graded_counts([[1, 1]], 2, 3)
    _kernels.ideal_dimension([[1, 1]], 2)
    print(f"jit warm-up: {time.perf_counter() - start:.3f}s\n")

    print(f"{'case':<24}{'kernel':<18}{'numpy':>10}{'numba':>10}{'speedup':>9}")
    for label, lts, top in cases():
        n = lts.shape[1]
        bounds = [top] * n
        kernels = {
            "degree_histogram": lambda: _kernels.degree_histogram(lts, bounds),
            "graded_counts": lambda: _kernels.graded_counts(lts, n, n * (top - 1)),
            "ideal_dimension": lambda: _kernels.ideal_dimension(lts[:-n], n),
        }
        for name, func in kernels.items():
            t_np, r_np = timed(lambda: run("numpy", func), args.repeat)
            t_nb, r_nb = timed(lambda: run("numba", func), args.repeat)
            if not np.array_equal(np.asarray(r_np), np.asarray(r_nb)):
                raise SystemExit(f"paths disagree on {label} {name}: {r_np} vs {r_nb}")
            print(f"{label:<24}{name:<18}{t_np:>9.4f}s{t_nb:>9.4f}s{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
