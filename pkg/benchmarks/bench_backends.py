#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the pure-Python fallback.

Times the three hot kernels (dominance matrix, chain partition via
matching, greedy chains) on synthetic groups of growing size, then an
end-to-end optimal solve on a multi-group timetable with each backend.

    python benchmarks/bench_backends.py
    python benchmarks/bench_backends.py --sizes 50,200,800 --stops 10
"""

import argparse
import time

from fifo_routes import kernels
from fifo_routes.generate import GeneratorSpec, generate_synthetic
from fifo_routes.kernels import load_backend
from fifo_routes.ordering import group_by_stop_sequence, pack_group_times
from fifo_routes.solvers import solve_greedy, solve_optimal


def time_call(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        started = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - started)
    return best, result


def group_times(size, stops, overtake, seed):
    spec = GeneratorSpec(
        num_sequences=1,
        trips_per_sequence=size,
        stops_per_sequence=stops,
        headway_seconds=120,
        jitter_seconds=200,
        overtake_probability=overtake,
        rng_seed=seed,
    )
    timetable = generate_synthetic(spec)
    (group,) = list(group_by_stop_sequence(timetable))
    return pack_group_times(group, timetable)


def bench_kernels(backends, sizes, stops, overtake):
    print(f"\nkernels on one group ({stops} stops, overtake {overtake}), best of 3:")
    header = f"{'kernel':<18} {'n':>6}" + "".join(
        f" {name:>12}" for name, _ in backends
    )
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for size in sizes:
        times = group_times(size, stops, overtake, seed=1)
        for kernel_name, call in (
            ("dominance_matrix", lambda m: m.dominance_matrix(times)),
            ("chain_partition", lambda m: m.chain_partition(times, m.dominance_matrix(times))),
            ("greedy_partition", lambda m: m.greedy_partition(times)),
        ):
            row = f"{kernel_name:<18} {size:>6}"
            elapsed = []
            for _, module in backends:
                t, _ = time_call(call, module)
                elapsed.append(t)
                row += f" {t * 1000:>10.2f}ms"
            if len(elapsed) == 2 and elapsed[0] > 0:
                row += f" {elapsed[1] / elapsed[0]:>8.1f}x"
            print(row)


def bench_end_to_end(backends, sequences, trips, stops):
    spec = GeneratorSpec(
        num_sequences=sequences,
        trips_per_sequence=trips,
        stops_per_sequence=stops,
        headway_seconds=300,
        jitter_seconds=60,
        overtake_probability=0.0,
        rng_seed=123,
    )
    timetable = generate_synthetic(spec)
    print(
        f"\nend-to-end solve ({sequences} sequences x {trips} trips,"
        f" {stops} stops):"
    )
    originals = {
        name: getattr(kernels, name)
        for name in ("dominance_matrix", "chain_partition", "greedy_partition")
    }
    try:
        for name, module in backends:
            for attr in originals:
                setattr(kernels, attr, getattr(module, attr))
            started = time.perf_counter()
            partition, _ = solve_optimal(timetable, threads=1)
            optimal_elapsed = time.perf_counter() - started
            started = time.perf_counter()
            solve_greedy(timetable, threads=1)
            greedy_elapsed = time.perf_counter() - started
            print(
                f"  {name:>8}: optimal {optimal_elapsed:7.2f}s,"
                f" greedy {greedy_elapsed:6.2f}s"
                f"  ({partition.total_routes} routes)"
            )
    finally:
        for attr, fn in originals.items():
            setattr(kernels, attr, fn)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,200,800",
                        help="comma-separated group sizes for the kernel bench")
    parser.add_argument("--stops", type=int, default=10)
    parser.add_argument("--overtake", type=float, default=0.3)
    parser.add_argument("--sequences", type=int, default=100,
                        help="sequence count for the end-to-end bench")
    parser.add_argument("--trips", type=int, default=100,
                        help="trips per sequence for the end-to-end bench")
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args()

    backends = []
    try:
        backends.append(("c", load_backend("c")))
    except ImportError:
        print("compiled backend unavailable; benchmarking pure Python only")
    backends.append(("python", load_backend("python")))
    print(f"default backend in this environment: {kernels.BACKEND}")

    sizes = [int(s) for s in args.sizes.split(",") if s]
    bench_kernels(backends, sizes, args.stops, args.overtake)
    if not args.skip_end_to_end:
        bench_end_to_end(backends, args.sequences, args.trips, args.stops)


if __name__ == "__main__":
    main()
