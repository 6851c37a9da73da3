"""Timing comparison of the numba and pure-numpy kernel paths on a typical
eye crop. Run: python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from gazekiosk import kernels

CROP = (28, 52)  # typical eye-region size at 1080p
REPEATS = 200


def bench(label, fn, *args):
    fn(*args)  # warmup / JIT compile
    start = time.perf_counter()
    for _ in range(REPEATS):
        fn(*args)
    per_call = (time.perf_counter() - start) / REPEATS
    print(f"{label:32s} {per_call * 1e3:9.3f} ms/call")
    return per_call


def main():
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, size=CROP, dtype=np.uint8)
    mask = rng.random(CROP) < 0.4

    print(f"crop {CROP[1]}x{CROP[0]}, {REPEATS} repeats, numba available: {kernels.HAS_NUMBA}")
    rows = []
    rows.append(("bilateral r=5", bench("bilateral numpy", kernels.bilateral_numpy, img, 5, 3.0, 15.0)))
    if kernels.HAS_NUMBA:
        jit = bench("bilateral numba", kernels.bilateral_jit, img, 5, 3.0, 15.0)
        print(f"{'':32s} speedup x{rows[-1][1] / jit:.1f}")

    rows.append(("min filter r=1", bench("min filter numpy", kernels.min_filter_numpy, img, 1, 0)))
    if kernels.HAS_NUMBA:
        jit = bench("min filter numba", kernels.min_filter_jit, img, 1, 0)
        print(f"{'':32s} speedup x{rows[-1][1] / jit:.1f}")

    rows.append(("moments", bench("moments numpy", kernels.moments_numpy, mask)))
    if kernels.HAS_NUMBA:
        jit = bench("moments numba", kernels.moments_jit, mask)
        print(f"{'':32s} speedup x{rows[-1][1] / jit:.1f}")


if __name__ == "__main__":
    main()
