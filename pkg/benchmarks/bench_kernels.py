#!/usr/bin/env python3
"""Compare the compiled elimination kernels against the pure-Python twins.

Both backends expose the same two entry points:

* ``rref(rows)``    - in-place reduced row echelon form over Fractions,
                      returning the pivot column list;
* ``bareiss_rank``  - fraction-free integer rank.

The script times both on identical random inputs and prints one table.
Run from the repository root::

    python3 benchmarks/bench_kernels.py --dim 60 --repeat 5
"""

import argparse
import random
import statistics
import time
from fractions import Fraction

from tensorforge import _kernels_py

try:
    from tensorforge import _speedups
except ImportError:
    _speedups = None


def random_fraction_rows(rng, nrows, ncols):
    return [
        [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(ncols)]
        for _ in range(nrows)
    ]


def random_int_rows(rng, nrows, ncols):
    return [[rng.randint(-99, 99) for _ in range(ncols)] for _ in range(nrows)]


def time_call(func, make_input, repeat):
    """Best-of-`repeat` wall time; every call gets a fresh copy of the input."""
    timings = []
    results = []
    for _ in range(repeat):
        rows = [list(row) for row in make_input]
        start = time.perf_counter()
        results.append(func(rows))
        timings.append(time.perf_counter() - start)
    return min(timings), statistics.median(timings), results[0]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dim", type=int, default=60,
                        help="square matrix size (default 60)")
    parser.add_argument("--repeat", type=int, default=5,
                        help="timed repetitions per case (default 5)")
    parser.add_argument("--seed", type=int, default=2026)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    frac_rows = random_fraction_rows(rng, args.dim, args.dim)
    int_rows = random_int_rows(rng, args.dim, args.dim)

    backends = [("pure", _kernels_py)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))
    else:
        print("note: compiled backend not built; timing the pure kernels only")

    cases = [
        ("rref (Fraction)", "rref", frac_rows),
        ("bareiss_rank (int)", "bareiss_rank", int_rows),
    ]

    print(f"matrix size {args.dim}x{args.dim}, best of {args.repeat} runs")
    print(f"{'kernel':<20} {'backend':<10} {'best':>10} {'median':>10}")
    baselines = {}
    reference = {}
    for label, attr, payload in cases:
        for backend_name, module in backends:
            best, median, result = time_call(
                getattr(module, attr), payload, args.repeat
            )
            check = reference.setdefault(label, result)
            if check != result:
                raise SystemExit(
                    f"backend disagreement on {label}: {check!r} != {result!r}"
                )
            suffix = ""
            if backend_name == "pure":
                baselines[label] = best
            elif baselines.get(label):
                suffix = f"  ({baselines[label] / best:.1f}x vs pure)"
            print(
                f"{label:<20} {backend_name:<10} "
                f"{best * 1000:>8.2f}ms {median * 1000:>8.2f}ms{suffix}"
            )


if __name__ == "__main__":
    main()
