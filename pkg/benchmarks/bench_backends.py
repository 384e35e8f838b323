#!/usr/bin/env python3
"""Benchmark the numba sweep kernel against the pure-numpy fallback.

Runs the same cascade sweep on both backends, reports wall times and the
worst coefficient disagreement.  The first numba call compiles (cached on
disk afterwards); it is timed separately and excluded from the steady-state
numbers.

Usage:
    python benchmarks/bench_backends.py [--preset fig2] [--points 2001] [--repeats 5]
"""

import argparse
import time

import numpy as np

from chiraltmm import get_preset
from chiraltmm._kernels import NUMBA_AVAILABLE, sweep_cascade


def time_backend(backend, stack, freqs, thetas, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        coeffs, status, _ = sweep_cascade(stack, freqs, thetas, 1.0, 0.0, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, coeffs, status


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--preset", default="fig2")
    parser.add_argument("--points", type=int, default=2001)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    config = get_preset(args.preset).config.with_points(args.points)
    stack = config.build_stack()
    freqs, thetas_deg = config.grid.flat()
    thetas = np.deg2rad(thetas_deg)
    n = freqs.size
    print(f"preset {args.preset}: {len(stack)} slabs, {n} grid points, {args.repeats} repeats")

    t_np, c_np, s_np = time_backend("numpy", stack, freqs, thetas, args.repeats)
    print(f"numpy : {t_np * 1e3:9.2f} ms  ({n / t_np:,.0f} points/s)")

    if not NUMBA_AVAILABLE:
        print("numba : unavailable (not installed or disabled via CHIRAL_TMM_NUMBA)")
        return

    t0 = time.perf_counter()
    sweep_cascade(stack, freqs, thetas, 1.0, 0.0, backend="numba")
    print(f"numba : {(time.perf_counter() - t0) * 1e3:9.2f} ms  first call (jit compile/cache load)")

    t_nb, c_nb, s_nb = time_backend("numba", stack, freqs, thetas, args.repeats)
    print(f"numba : {t_nb * 1e3:9.2f} ms  ({n / t_nb:,.0f} points/s)  speedup x{t_np / t_nb:.2f}")

    assert (s_np == s_nb).all(), "backends disagree on failure statuses"
    diff = np.abs(c_np - c_nb).max() if n else 0.0
    print(f"agreement: max |coefficient difference| = {diff:.3e}")


if __name__ == "__main__":
    main()
