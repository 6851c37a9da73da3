"""Iris segmentation: filter, erode, threshold, centroid via image moments.

The iris is the dark blob in an eye crop. The chain smooths the crop with a
bilateral filter, consolidates the dark region with an iterated minimum
filter, thresholds it into a binary mask, and takes the mask centroid as the
pupil center.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NoContrastError

THRESHOLD_CANDIDATES = tuple(range(5, 101, 5))


@dataclass
class SegmentationParams:
    kernel_radius: int = 5
    spatial_sigma: float = 3.0
    range_sigma: float = 15.0
    erosion_radius: int = 1
    erosion_iterations: int = 3
    threshold: int | None = None  # None = adaptive per calibrate_threshold
    target_iris_fraction: float = 0.48

    def __post_init__(self) -> None:
        if self.spatial_sigma <= 0 or self.range_sigma <= 0:
            raise ValueError("sigmas must be positive")
        if self.kernel_radius < 0 or self.erosion_radius < 0 or self.erosion_iterations < 0:
            raise ValueError("radii and iteration counts must be nonnegative")


@dataclass(frozen=True)
class PupilCenter:
    x: float
    y: float
    mass: int


def bilateral_filter(image: np.ndarray, params: SegmentationParams) -> np.ndarray:
    if image.size == 0:
        raise ValueError("empty image")
    return kernels.bilateral(image, params.kernel_radius, params.spatial_sigma, params.range_sigma)


def erode(arr: np.ndarray, kernel_radius: int, iterations: int):
    """Iterated minimum filter over the (2r+1)^2 neighborhood.

    Boolean masks are padded with background (false). Grayscale images use
    edge-replicated padding so the crop border does not bleed darkness into
    the iris mask.
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    out = arr.copy()
    if arr.dtype == np.bool_:
        work = out.astype(np.uint8)
        for _ in range(iterations):
            work = kernels.min_filter(work, kernel_radius, 0)
        return work.astype(np.bool_)
    for _ in range(iterations):
        out = kernels.min_filter_edge(out, kernel_radius)
    return out


def binarize(image: np.ndarray, threshold: int) -> np.ndarray:
    """Mask of dark pixels: true exactly where intensity <= threshold."""
    if not 0 <= threshold <= 255:
        raise ValueError("threshold must be in [0, 255]")
    return image <= threshold


def centroid_from_moments(mask: np.ndarray) -> PupilCenter | None:
    m00, m10, m01 = kernels.moments(mask)
    if m00 == 0:
        return None
    return PupilCenter(x=m10 / m00, y=m01 / m00, mass=m00)


def calibrate_threshold(eye_image: np.ndarray, params: SegmentationParams) -> int:
    """Pick the candidate threshold whose iris-area fraction is closest to target.

    Runs on the filtered+eroded image; raises NoContrastError when every
    candidate yields an all-or-nothing mask (nothing to discriminate).
    """
    if eye_image.size == 0:
        raise ValueError("empty image")
    prepared = erode(bilateral_filter(eye_image, params), params.erosion_radius, params.erosion_iterations)
    area = prepared.size
    best_t = THRESHOLD_CANDIDATES[0]
    best_err = float("inf")
    discriminating = False
    for t in THRESHOLD_CANDIDATES:
        frac = int(np.count_nonzero(prepared <= t)) / area
        if 0.0 < frac < 1.0:
            discriminating = True
        err = abs(frac - params.target_iris_fraction)
        if err < best_err:
            best_err = err
            best_t = t
    if not discriminating:
        raise NoContrastError("no threshold separates the eye region")
    return best_t


def locate_pupil(eye_image: np.ndarray, params: SegmentationParams) -> PupilCenter | None:
    """Full chain: bilateral filter, erode, binarize, centroid.

    Returns the pupil center in eye-region coordinates, or None when the
    mask comes out empty (tracking loss for this eye).
    """
    filtered = bilateral_filter(eye_image, params)
    eroded = erode(filtered, params.erosion_radius, params.erosion_iterations)
    threshold = params.threshold
    if threshold is None:
        threshold = calibrate_threshold(eye_image, params)
    mask = binarize(eroded, threshold)
    return centroid_from_moments(mask)
