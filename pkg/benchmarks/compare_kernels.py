#!/usr/bin/env python3
"""Benchmark the counting-sweep kernels against each other.

The same exact integer sweep runs on three backends:

    numba   @njit multi-limb row kernel (default when numba is present)
    numpy   vectorized limb arithmetic (fallback, KGLAB_KERNEL=numpy)
    python  big-integer shell-order reference (oracle, tiny Q only)

All backends must produce identical per-shell counts; this script times
them and verifies that.

Usage: python benchmarks/compare_kernels.py [--Q 2000] [--repeats 3]
"""

import argparse
import time
from fractions import Fraction

import numpy as np

from kglab._kernels import available_backends, count_by_shell_raw
from kglab.psifunc import PowerLaw, psi_mantissas
from kglab.rng import RngStream
from kglab.surd import QuadraticSurd, surd_eval

SCALE = 192


def bench(Q: int, repeats: int) -> None:
    gamma = surd_eval(QuadraticSurd.sqrt(2), 1, SCALE).mantissa
    a1, a2 = RngStream(0).sample_torus_point(SCALE)
    psi = PowerLaw(Fraction(1), Fraction(3, 4))
    thresholds = psi_mantissas(psi, Q, SCALE)
    vectors = (2 * Q + 1) ** 2 - 1

    results = {}
    for backend in available_backends():
        if backend == "python" and Q > 300:
            print(f"{backend:>7}: skipped (reference path, Q too large)")
            continue
        # warm up (JIT compile / cache load)
        count_by_shell_raw(a1.mantissa, a2.mantissa, gamma, SCALE,
                           thresholds, min(Q, 50), backend)
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            counts = count_by_shell_raw(a1.mantissa, a2.mantissa, gamma,
                                        SCALE, thresholds, Q, backend)
            best = min(best, time.perf_counter() - t0)
        results[backend] = counts
        rate = vectors / best / 1e6
        print(f"{backend:>7}: {best:8.3f} s   {rate:7.1f} M vectors/s   "
              f"N = {int(counts.sum())}")

    names = list(results)
    for other in names[1:]:
        if not np.array_equal(results[names[0]], results[other]):
            raise SystemExit(f"MISMATCH between {names[0]} and {other}")
    print(f"all {len(names)} backends agree on per-shell counts")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Q", type=int, default=2000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    bench(args.Q, args.repeats)
