"""Compare the numba and numpy kernels for the pair-canonicalization table.

Run as a script::

    python benchmarks/bench_kernels.py [--repeat 5]

For a range of levels the full-unit-group table is built with both
backends; the outputs are checked to be identical and the best wall time
of each backend is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from modcurve._kernels import HAS_NUMBA, canonical_pair_table
from modcurve.zmodn import subgroups_containing_minus1

LEVELS = [21, 34, 56, 64, 95, 119, 131, 210, 256]


def bench(N: int, repeat: int) -> tuple[float, float | None]:
    delta = subgroups_containing_minus1(N)[-1]
    elements = delta.elements

    def best_time(backend: str) -> float:
        times = []
        for _ in range(repeat):
            start = time.perf_counter()
            canonical_pair_table(N, elements, backend=backend)
            times.append(time.perf_counter() - start)
        return min(times)

    numpy_time = best_time("numpy")
    numba_time = None
    if HAS_NUMBA:
        canonical_pair_table(N, elements, backend="numba")  # compile once
        numba_time = best_time("numba")
        same = np.array_equal(
            canonical_pair_table(N, elements, backend="numpy"),
            canonical_pair_table(N, elements, backend="numba"),
        )
        if not same:
            raise SystemExit(f"backend outputs differ at N={N}")
    return numpy_time, numba_time


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions per backend (default 5)")
    args = parser.parse_args()

    print(f"numba available: {HAS_NUMBA}")
    header = f"{'N':>5} {'pairs':>8} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for N in LEVELS:
        numpy_time, numba_time = bench(N, args.repeat)
        if numba_time is None:
            print(f"{N:>5} {N * N:>8} {numpy_time * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
        else:
            ratio = numpy_time / numba_time if numba_time else float("inf")
            print(f"{N:>5} {N * N:>8} {numpy_time * 1e3:>8.2f}ms "
                  f"{numba_time * 1e3:>8.2f}ms {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
