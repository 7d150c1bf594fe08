#!/usr/bin/env python3
"""Benchmark the compiled band kernels against the numpy fallback.

Sizes mirror the real workloads: short trigonometric-polynomial symbols
convolved against expansion-length coefficient arrays, and aligned inner
products at section widths. Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from msolab import _kernels_py

try:
    from msolab import _ckernels
except ImportError:
    _ckernels = None


def time_call(fn, *args, repeats=2000, rounds=5):
    best = float("inf")
    for _ in range(rounds):
        start = time.perf_counter()
        for _ in range(repeats):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / repeats)
    return best * 1e6  # microseconds


def random_coeffs(rng, n):
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)).astype(
        np.complex128)


def main():
    rng = np.random.default_rng(7)
    print(f"compiled extension available: {_ckernels is not None}\n")
    rows = []

    conv_cases = [(9, 40), (9, 320), (64, 64), (320, 9), (520, 520)]
    for na, nb in conv_cases:
        a, b = random_coeffs(rng, na), random_coeffs(rng, nb)
        repeats = max(200, 200000 // (na * nb))
        py = time_call(_kernels_py.convolve, a, b, repeats=repeats)
        if _ckernels is not None:
            cy = time_call(_ckernels.convolve, a, b, repeats=repeats)
            rows.append((f"convolve {na}x{nb}", cy, py))
        else:
            rows.append((f"convolve {na}x{nb}", None, py))

    for n in (40, 320, 520):
        a, b = random_coeffs(rng, n), random_coeffs(rng, n + 16)
        py = time_call(_kernels_py.inner_shifted, a, b, 7)
        if _ckernels is not None:
            cy = time_call(_ckernels.inner_shifted, a, b, 7)
            rows.append((f"inner_shifted n={n}", cy, py))
        else:
            rows.append((f"inner_shifted n={n}", None, py))

    header = f"{'kernel':22s} {'compiled us':>12s} {'fallback us':>12s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, cy, py in rows:
        if cy is None:
            print(f"{name:22s} {'-':>12s} {py:12.2f} {'-':>8s}")
        else:
            print(f"{name:22s} {cy:12.2f} {py:12.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
