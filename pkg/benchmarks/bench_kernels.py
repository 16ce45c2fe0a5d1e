#!/usr/bin/env python3
"""Benchmark the numba kernels against the numpy fallbacks.

Runs every kernel on both backends over a range of sizes and prints the
median wall time plus the numba speedup. The numba functions are warmed
up first so JIT compilation is not measured.

Usage:
    python benchmarks/bench_kernels.py [--sizes 50,100,200] [--repeats 5]

Setting OFI_AUDIT_NO_NUMBA=1 removes the numba backend entirely, in which
case only the numpy column is reported.
"""

import argparse
import statistics
import time

from ofi_audit import _kernels

# pair counting is O(n^2) while the enumeration kernels are O(n^3), so it
# gets its own (much larger) size ladder
ENUM_KERNELS = ("enum_count", "enum_cell_counts", "enum_score_counts", "enum_score_sums")
PAIR_KERNEL = "pair_score_counts"


def median_time(func, n: int, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func(n)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def bench(name: str, sizes: list[int], repeats: int) -> None:
    backends = _kernels.available_backends()
    print(f"\n{name}")
    header = f"  {'n':>7}" + "".join(f"  {b:>12}" for b in backends)
    if "numba" in backends and "numpy" in backends:
        header += f"  {'speedup':>9}"
    print(header)
    for n in sizes:
        row = f"  {n:>7}"
        timings = {}
        for backend in backends:
            func = _kernels.BACKENDS[backend][name]
            if backend == "numba":
                func(min(sizes))  # warm the JIT outside the timed region
            timings[backend] = median_time(func, n, repeats)
            row += f"  {timings[backend] * 1e3:>10.3f}ms"
        if "numba" in timings and "numpy" in timings and timings["numba"] > 0:
            row += f"  {timings['numpy'] / timings['numba']:>8.1f}x"
        print(row)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", default="50,100,200",
        help="comma-separated n values for the enumeration kernels",
    )
    parser.add_argument(
        "--pair-sizes", default="1000,5000,20000",
        help="comma-separated n values for the pair-counting kernel",
    )
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    pair_sizes = [int(s) for s in args.pair_sizes.split(",")]

    print(f"backends: {', '.join(_kernels.available_backends())}")
    print(f"active default: {_kernels.active_backend()}")
    bench(PAIR_KERNEL, pair_sizes, args.repeats)
    for name in ENUM_KERNELS:
        bench(name, sizes, args.repeats)


if __name__ == "__main__":
    main()
