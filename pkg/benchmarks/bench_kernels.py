#!/usr/bin/env python3
"""Benchmark the jitted kernels against their pure-numpy twins.

Each kernel in ``vecgate.kernels`` ships two implementations selected by the
``use_numba`` argument (or, globally, the ``VECGATE_NO_NUMBA`` environment
variable). This script times both paths on the same inputs, reports the
speedup, and cross-checks that the two paths agree numerically — they may
differ only by float rounding from different summation orders.

Usage:
    python3 benchmarks/bench_kernels.py              # default sizes
    python3 benchmarks/bench_kernels.py --rows 200000 --dim 300 --repeats 5
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from vecgate._accel import HAS_NUMBA
from vecgate.kernels import apply_gate, assign_nearest, correlation_sum


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_case(name, fn, repeats, diff):
    """Time fn(use_numba=...) on both paths and report agreement."""
    np_time, np_out = _time(lambda: fn(use_numba=False), repeats)
    if HAS_NUMBA:
        fn(use_numba=True)  # warm the JIT outside the timed region
        nb_time, nb_out = _time(lambda: fn(use_numba=True), repeats)
        speedup = f"{np_time / nb_time:6.2f}x"
        max_diff = f"{diff(np_out, nb_out):.3e}"
        nb_col = f"{nb_time * 1e3:10.2f}"
    else:
        nb_col, speedup, max_diff = "       n/a", "   n/a", "n/a"
    print(f"{name:<18} {np_time * 1e3:10.2f} {nb_col} {speedup}   {max_diff}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=50_000,
                        help="vocabulary size of the synthetic embedding")
    parser.add_argument("--dim", type=int, default=100,
                        help="vector dimensionality")
    parser.add_argument("--clusters", type=int, default=40,
                        help="centroid count for the assignment kernel")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timed repetitions; the best time is reported")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    X = rng.normal(size=(args.rows, args.dim))
    mu = X.mean(axis=0)
    U = np.linalg.qr(rng.normal(size=(args.dim, args.dim)))[0]
    gains = rng.uniform(0.0, 1.0, size=args.dim)
    centroids = rng.normal(size=(args.clusters, args.dim))

    print(f"rows={args.rows} dim={args.dim} clusters={args.clusters} "
          f"repeats={args.repeats} numba={'yes' if HAS_NUMBA else 'NO'}")
    print(f"{'kernel':<18} {'numpy ms':>10} {'numba ms':>10} {'speedup':>7}"
          f"   max |Δ|")

    rel = lambda a, b: np.abs(a - b).max() / max(np.abs(a).max(), 1e-300)
    bench_case("correlation_sum",
               lambda use_numba: correlation_sum(X, mu, use_numba=use_numba),
               args.repeats, rel)
    bench_case("apply_gate",
               lambda use_numba: apply_gate(X, U, gains, use_numba=use_numba),
               args.repeats, rel)
    bench_case("assign_nearest",
               lambda use_numba: assign_nearest(X, centroids,
                                                use_numba=use_numba),
               args.repeats,
               lambda a, b: float(np.mean(a != b)))

    print("\nmax |Δ| is relative for the float kernels and the disagreement "
          "rate for assign_nearest (must be 0).")


if __name__ == "__main__":
    main()
