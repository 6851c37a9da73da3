"""Hot image kernels: bilateral filter, min filter, mask moments.

Each kernel has a pure-numpy implementation and a numba-jitted one with
identical semantics. The public functions dispatch on the GAZEKIOSK_NUMBA
environment variable (default: use numba when importable). Both paths stay
importable so benchmarks and tests can compare them directly.
"""

from __future__ import annotations

import math
import os

import numpy as np


def _numba_enabled() -> bool:
    flag = os.environ.get("GAZEKIOSK_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

USING_NUMBA = HAS_NUMBA and _numba_enabled()


def _space_weights(radius: int, spatial_sigma: float) -> np.ndarray:
    dy, dx = np.mgrid[-radius : radius + 1, -radius : radius + 1]
    inv = 1.0 / (2.0 * spatial_sigma * spatial_sigma)
    return np.exp(-(dx * dx + dy * dy) * inv)


def _range_weights(range_sigma: float) -> np.ndarray:
    # 8-bit input: the range weight only depends on |difference| in 0..255
    d = np.arange(256, dtype=np.float64)
    inv = 1.0 / (2.0 * range_sigma * range_sigma)
    return np.exp(-(d * d) * inv)


def bilateral_numpy(image: np.ndarray, radius: int, spatial_sigma: float, range_sigma: float) -> np.ndarray:
    """Range-and-space weighted mean over a (2r+1)^2 window, edge-clamped."""
    if radius <= 0:
        return image.copy()
    img = image.astype(np.int64)
    padded = np.pad(img, radius, mode="edge")
    space = _space_weights(radius, spatial_sigma)
    range_lut = _range_weights(range_sigma)
    h, w = img.shape
    acc = np.zeros((h, w))
    wsum = np.zeros((h, w))
    for dy in range(2 * radius + 1):
        for dx in range(2 * radius + 1):
            shifted = padded[dy : dy + h, dx : dx + w]
            wgt = space[dy, dx] * range_lut[np.abs(shifted - img)]
            acc += wgt * shifted
            wsum += wgt
    out = acc / wsum
    return np.rint(out).clip(0, 255).astype(np.uint8)


def min_filter_numpy(arr: np.ndarray, radius: int, pad_value) -> np.ndarray:
    """Single-pass minimum over a (2r+1)^2 window with constant padding."""
    if radius <= 0:
        return arr.copy()
    padded = np.pad(arr, radius, mode="constant", constant_values=pad_value)
    h, w = arr.shape
    out = padded[0:h, 0:w].copy()
    for dy in range(2 * radius + 1):
        for dx in range(2 * radius + 1):
            np.minimum(out, padded[dy : dy + h, dx : dx + w], out=out)
    return out


def min_filter_edge_numpy(arr: np.ndarray, radius: int) -> np.ndarray:
    """Minimum filter with edge-replicated padding (for grayscale images)."""
    if radius <= 0:
        return arr.copy()
    padded = np.pad(arr, radius, mode="edge")
    h, w = arr.shape
    out = padded[0:h, 0:w].copy()
    for dy in range(2 * radius + 1):
        for dx in range(2 * radius + 1):
            np.minimum(out, padded[dy : dy + h, dx : dx + w], out=out)
    return out


def moments_numpy(mask: np.ndarray) -> tuple[int, int, int]:
    """(m00, m10, m01) integer sums over true pixels."""
    ys, xs = np.nonzero(mask)
    return int(len(xs)), int(xs.sum()), int(ys.sum())


if HAS_NUMBA:

    @njit(cache=True)
    def _bilateral_jit(img, radius, space, range_lut):  # pragma: no cover - exercised via dispatch
        h, w = img.shape
        out = np.empty((h, w), np.uint8)
        for y in range(h):
            for x in range(w):
                c = img[y, x]
                acc = 0.0
                wsum = 0.0
                for dy in range(-radius, radius + 1):
                    yy = y + dy
                    if yy < 0:
                        yy = 0
                    elif yy >= h:
                        yy = h - 1
                    for dx in range(-radius, radius + 1):
                        xx = x + dx
                        if xx < 0:
                            xx = 0
                        elif xx >= w:
                            xx = w - 1
                        v = img[yy, xx]
                        d = v - c
                        if d < 0:
                            d = -d
                        wgt = space[dy + radius, dx + radius] * range_lut[d]
                        acc += wgt * v
                        wsum += wgt
                val = acc / wsum
                # round-half-to-even, matching np.rint
                r = int(math.floor(val))
                frac = val - r
                if frac > 0.5 or (frac == 0.5 and r % 2 == 1):
                    r += 1
                if r < 0:
                    r = 0
                elif r > 255:
                    r = 255
                out[y, x] = np.uint8(r)
        return out

    @njit(cache=True)
    def _min_filter_jit(padded, radius):  # pragma: no cover - exercised via dispatch
        h = padded.shape[0] - 2 * radius
        w = padded.shape[1] - 2 * radius
        out = np.empty((h, w), padded.dtype)
        for y in range(h):
            for x in range(w):
                m = padded[y, x]
                for dy in range(2 * radius + 1):
                    for dx in range(2 * radius + 1):
                        v = padded[y + dy, x + dx]
                        if v < m:
                            m = v
                out[y, x] = m
        return out

    @njit(cache=True)
    def _moments_jit(mask):  # pragma: no cover - exercised via dispatch
        h, w = mask.shape
        m00 = 0
        m10 = 0
        m01 = 0
        for y in range(h):
            for x in range(w):
                if mask[y, x]:
                    m00 += 1
                    m10 += x
                    m01 += y
        return m00, m10, m01

    def bilateral_jit(image: np.ndarray, radius: int, spatial_sigma: float, range_sigma: float) -> np.ndarray:
        if radius <= 0:
            return image.copy()
        space = _space_weights(radius, spatial_sigma)
        range_lut = _range_weights(range_sigma)
        return _bilateral_jit(image.astype(np.int64), radius, space, range_lut)

    def min_filter_jit(arr: np.ndarray, radius: int, pad_value) -> np.ndarray:
        if radius <= 0:
            return arr.copy()
        padded = np.pad(arr, radius, mode="constant", constant_values=pad_value)
        return _min_filter_jit(padded, radius)

    def min_filter_edge_jit(arr: np.ndarray, radius: int) -> np.ndarray:
        if radius <= 0:
            return arr.copy()
        padded = np.pad(arr, radius, mode="edge")
        return _min_filter_jit(padded, radius)

    def moments_jit(mask: np.ndarray) -> tuple[int, int, int]:
        m00, m10, m01 = _moments_jit(mask)
        return int(m00), int(m10), int(m01)


def bilateral(image: np.ndarray, radius: int, spatial_sigma: float, range_sigma: float) -> np.ndarray:
    if USING_NUMBA:
        return bilateral_jit(image, radius, spatial_sigma, range_sigma)
    return bilateral_numpy(image, radius, spatial_sigma, range_sigma)


def min_filter(arr: np.ndarray, radius: int, pad_value) -> np.ndarray:
    if USING_NUMBA:
        return min_filter_jit(arr, radius, pad_value)
    return min_filter_numpy(arr, radius, pad_value)


def min_filter_edge(arr: np.ndarray, radius: int) -> np.ndarray:
    if USING_NUMBA:
        return min_filter_edge_jit(arr, radius)
    return min_filter_edge_numpy(arr, radius)


def moments(mask: np.ndarray) -> tuple[int, int, int]:
    if USING_NUMBA:
        return moments_jit(mask)
    return moments_numpy(mask)
