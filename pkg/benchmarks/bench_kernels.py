#!/usr/bin/env python3
"""Benchmark the compiled kernel lane against the pure-Python fallback.

Times menger_count and admissible_profile on seeded random graphs and
prints a table with the speedup per workload.  Both lanes are also
cross-checked for agreement on every instance, so a run doubles as a
consistency audit.

Usage:
    python3 benchmarks/bench_kernels.py [--seed N] [--repeat N]
"""

from __future__ import annotations

import argparse
import itertools
import random
import statistics
import time

from trisurf._kernels import _HAVE_COMPILED, _pure

if _HAVE_COMPILED:
    from trisurf._kernels import _core
from trisurf.hypercore import SimpleGraph


def random_masks(rng: random.Random, n: int, density: float) -> list[int]:
    pairs = [p for p in itertools.combinations(range(n), 2) if rng.random() < density]
    return SimpleGraph.from_edges(pairs, n_vertices=n).adjacency_masks()


def timed(fn, *args, repeat: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_menger(rng: random.Random, repeat: int) -> list[tuple[str, float, float]]:
    rows = []
    for n, density, calls in ((12, 0.4, 2000), (24, 0.3, 1000), (48, 0.2, 400)):
        instances = []
        for _ in range(calls):
            adj = random_masks(rng, n, density)
            x, y = rng.sample(range(n), 2)
            instances.append((adj, x, y))

        def run(lane):
            return [lane.menger_count(adj, x, y, n) for adj, x, y in instances]

        t_pure, r_pure = timed(run, _pure, repeat=repeat)
        if _HAVE_COMPILED:
            t_fast, r_fast = timed(run, _core, repeat=repeat)
            assert r_pure == r_fast, "lane disagreement in menger_count"
        else:
            t_fast = float("nan")
        rows.append((f"menger n={n} d={density} x{calls}", t_pure, t_fast))
    return rows


def bench_profile(rng: random.Random, repeat: int) -> list[tuple[str, float, float]]:
    rows = []
    for n, density in ((10, 0.5), (14, 0.4), (18, 0.3)):
        adj = random_masks(rng, n, density)
        x, y = 0, 1

        def run(lane):
            return lane.admissible_profile(adj, x, y, 3)

        t_pure, r_pure = timed(run, _pure, repeat=repeat)
        if _HAVE_COMPILED:
            t_fast, r_fast = timed(run, _core, repeat=repeat)
            assert r_pure == r_fast, "lane disagreement in admissible_profile"
        else:
            t_fast = float("nan")
        rows.append((f"profile n={n} d={density}", t_pure, t_fast))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions; the best run is reported")
    args = parser.parse_args()

    print(f"compiled lane available: {_HAVE_COMPILED}")
    rng = random.Random(args.seed)
    rows = bench_menger(rng, args.repeat) + bench_profile(rng, args.repeat)

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'pure (s)':>10}  {'compiled (s)':>12}  {'speedup':>8}")
    speedups = []
    for name, t_pure, t_fast in rows:
        if t_fast == t_fast and t_fast > 0:  # not NaN
            speedup = t_pure / t_fast
            speedups.append(speedup)
            print(f"{name:<{width}}  {t_pure:>10.4f}  {t_fast:>12.4f}  {speedup:>7.1f}x")
        else:
            print(f"{name:<{width}}  {t_pure:>10.4f}  {'n/a':>12}  {'n/a':>8}")
    if speedups:
        print(f"geometric-mean speedup: {statistics.geometric_mean(speedups):.1f}x")


if __name__ == "__main__":
    main()
