from __future__ import annotations

import numpy as np
import pytest

from gazekiosk.menu import Catalog
from gazekiosk.ratios import GazeSample
from gazekiosk.vision import FaceLandmarks, Frame

SAMPLE_RATE = 30


def sample_time(k: int) -> int:
    return (k * 1000) // SAMPLE_RATE


def make_disc_image(width, height, cx, cy, r, dark=20, bright=200):
    """Eye-crop-like raster: dark disc on a bright background."""
    ys, xs = np.mgrid[0:height, 0:width]
    img = np.full((height, width), bright, dtype=np.uint8)
    img[(xs - cx) ** 2 + (ys - cy) ** 2 <= r * r] = dark
    return img


def disc_centroid(width, height, cx, cy, r):
    """Pixel-grid centroid of the disc (the reachable ground truth)."""
    ys, xs = np.mgrid[0:height, 0:width]
    inside = (xs - cx) ** 2 + (ys - cy) ** 2 <= r * r
    return xs[inside].mean(), ys[inside].mean()


def ratio_samples(points, start_k=0):
    """GazeSamples on the 30 Hz grid; points is a list of (h, v) or None (invalid)."""
    out = []
    for i, point in enumerate(points):
        t = sample_time(start_k + i)
        if point is None:
            out.append(GazeSample(t_ms=t, h_final=None, v_final=None, valid=False))
        else:
            out.append(GazeSample(t_ms=t, h_final=point[0], v_final=point[1], valid=True))
    return out


def segments_to_samples(segments):
    """segments: list of ((h, v) | None, n_samples)."""
    points = []
    for point, n in segments:
        points.extend([point] * n)
    return ratio_samples(points)


def synthetic_face_frame(t_ms=0, width=320, height=240, left_pupil=None, right_pupil=None, eyelid_gap=6):
    """Frame with two dark eye discs plus matching 68-point landmarks.

    Eye boxes are 32 px wide; eyelid landmark pairs sit eyelid_gap above and
    below the eye center line. Returns (frame, landmarks, ground truth dict).
    """
    left_center = (110, 100)
    right_center = (210, 100)
    if left_pupil is None:
        left_pupil = left_center
    if right_pupil is None:
        right_pupil = right_center
    img = np.full((height, width), 200, dtype=np.uint8)
    ys, xs = np.mgrid[0:height, 0:width]
    for (px, py) in (left_pupil, right_pupil):
        img[(xs - px) ** 2 + (ys - py) ** 2 <= 25] = 20

    points = np.zeros((68, 2), dtype=np.float64)
    # face oval and the other non-eye landmarks: anywhere in bounds
    for i in range(68):
        points[i] = (40.0 + (i % 16) * 15.0, 170.0 + (i // 16) * 15.0)

    def eye_points(cx, cy):
        half = 16
        return [
            (cx - half, cy),  # outer corner
            (cx - 6, cy - eyelid_gap),  # upper pair
            (cx + 6, cy - eyelid_gap),
            (cx + half, cy),  # inner corner
            (cx + 6, cy + eyelid_gap),  # lower pair
            (cx - 6, cy + eyelid_gap),
        ]

    for i, pt in zip(range(36, 42), eye_points(*left_center)):
        points[i] = pt
    for i, pt in zip(range(42, 48), eye_points(*right_center)):
        points[i] = pt

    frame = Frame(image=img, t_ms=t_ms)
    landmarks = FaceLandmarks(points=points, t_ms=t_ms)
    truth = {
        "left_center": left_center,
        "right_center": right_center,
        "left_pupil": left_pupil,
        "right_pupil": right_pupil,
        "eye_half_width": 16,
        "eyelid_gap": eyelid_gap,
    }
    return frame, landmarks, truth


@pytest.fixture
def catalog() -> Catalog:
    return Catalog.default()
