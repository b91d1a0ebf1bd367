"""Benchmark the batch-evolution kernels: numba JIT vs pure numpy.

Runs the restricted-program kernel on a few program shapes over exhaustive
input batches and reports best-of-N wall times for both implementations
(plus the one-off JIT compile cost).  Force a backend package-wide with
GQBP_BACKEND=numpy|numba; this script always times both when available.

Usage: python benchmarks/bench_backends.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from gqbp.backends import HAVE_NUMBA, _evolve_restricted_numpy
from gqbp.programs import random_rgqbp
from gqbp.simulate import _level_arrays, all_inputs

SCENARIOS = [
    # (width, levels, n) -> batch of 2^n inputs
    # small batches: per-call overhead dominates, the JIT loop wins
    (4, 64, 6),
    (8, 24, 8),
    (2, 48, 10),
    # large batches: the BLAS-backed batched matmul takes over
    (2, 16, 14),
    (8, 8, 12),
    (16, 32, 12),
    (32, 16, 10),
]


def best_of(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if HAVE_NUMBA:
        from gqbp.backends import _evolve_restricted_numba
    else:
        print("numba not importable; timing the numpy path only")

    header = f"{'s':>4} {'L':>4} {'n':>4} {'batch':>7} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for s, levels, n in SCENARIOS:
        prog = random_rgqbp(s, levels, n, seed=0)
        _, (bases, thetas, labels) = _level_arrays(prog)
        inputs = all_inputs(n)
        call = (bases, thetas, labels, np.ascontiguousarray(prog.initial), inputs)

        t_numpy = best_of(_evolve_restricted_numpy, call, args.repeats)
        if HAVE_NUMBA:
            t0 = time.perf_counter()
            _evolve_restricted_numba(*call)  # includes compile on first scenario
            first = time.perf_counter() - t0
            t_numba = best_of(_evolve_restricted_numba, call, args.repeats)
            speed = t_numpy / t_numba
            print(f"{s:>4} {levels:>4} {n:>4} {len(inputs):>7} "
                  f"{t_numpy * 1e3:>8.2f}ms {t_numba * 1e3:>8.2f}ms {speed:>7.2f}x"
                  f"{'   (first call ' + format(first, '.2f') + 's)' if first > 0.1 else ''}")
        else:
            print(f"{s:>4} {levels:>4} {n:>4} {len(inputs):>7} {t_numpy * 1e3:>8.2f}ms "
                  f"{'-':>10} {'-':>8}")

    # agreement spot check, so a broken kernel cannot masquerade as a fast one
    if HAVE_NUMBA:
        prog = random_rgqbp(6, 6, 8, seed=1)
        _, (bases, thetas, labels) = _level_arrays(prog)
        inputs = all_inputs(8)
        call = (bases, thetas, labels, np.ascontiguousarray(prog.initial), inputs)
        dev = np.abs(_evolve_restricted_numba(*call) - _evolve_restricted_numpy(*call)).max()
        print(f"\nbackend agreement: max |numba - numpy| = {dev:.2e}")


if __name__ == "__main__":
    main()
