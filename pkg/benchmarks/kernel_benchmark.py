#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-numpy trial kernels.

Runs the same chunked workload through both backends, reports trials per
second, and cross-checks that the outputs agree. Example:

    python3 benchmarks/kernel_benchmark.py --trials 4000000
"""

import argparse
import time

import numpy as np

from cnoma_oam import SystemParams
from cnoma_oam._kernel import available_backends, get_backend
from cnoma_oam.montecarlo import CHUNK_TRIALS, kernel_coeffs, philox_key


def run_backend(backend, key, coeffs, n_trials: int, chunk: int) -> tuple[float, np.ndarray]:
    sums = np.zeros(8)
    start = time.perf_counter()
    for lo in range(0, n_trials, chunk):
        n = min(chunk, n_trials - lo)
        sums += backend.capacity_samples(int(key[0]), int(key[1]), lo, n, coeffs).sum(axis=0)
    elapsed = time.perf_counter() - start
    return elapsed, sums / n_trials


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=2_000_000)
    parser.add_argument("--chunk", type=int, default=CHUNK_TRIALS)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    key = philox_key(args.seed)
    coeffs = kernel_coeffs(SystemParams.default())
    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    print(f"{args.trials} trials, chunk size {args.chunk}\n")

    results = {}
    for name in backends:
        backend = get_backend(name)
        elapsed, means = run_backend(backend, key, coeffs, args.trials, args.chunk)
        results[name] = (elapsed, means)
        print(f"{name:>9}: {elapsed:8.3f} s   {args.trials / elapsed / 1e6:7.2f} Mtrials/s")

    if len(results) == 2:
        speedup = results["python"][0] / results["compiled"][0]
        gap = np.max(np.abs(results["compiled"][1] - results["python"][1])
                     / np.abs(results["python"][1]))
        print(f"\nspeedup (compiled vs python): {speedup:.1f}x")
        print(f"mean-capacity agreement: max rel diff {gap:.2e}")


if __name__ == "__main__":
    main()
