"""Frame ingest, 68-point landmark providers, and per-eye region cropping."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Protocol

import numpy as np

from .errors import InvalidLandmarksError
from .pgm import read_frame_index, read_pgm

log = logging.getLogger(__name__)

LEFT_EYE_INDICES = (36, 37, 38, 39, 40, 41)
RIGHT_EYE_INDICES = (42, 43, 44, 45, 46, 47)

DEFAULT_CROP_MARGIN = 5


@dataclass(frozen=True)
class Frame:
    image: np.ndarray  # (height, width) uint8 grayscale
    t_ms: int

    @property
    def width(self) -> int:
        return self.image.shape[1]

    @property
    def height(self) -> int:
        return self.image.shape[0]


def to_grayscale(rgb: np.ndarray) -> np.ndarray:
    """ITU-R 601 luma conversion for (h, w, 3) arrays; grayscale passes through."""
    if rgb.ndim == 2:
        return rgb.astype(np.uint8, copy=False)
    luma = rgb[..., 0] * 0.299 + rgb[..., 1] * 0.587 + rgb[..., 2] * 0.114
    return np.rint(luma).clip(0, 255).astype(np.uint8)


@dataclass(frozen=True)
class FaceLandmarks:
    points: np.ndarray  # (68, 2) float64, frame coordinates
    t_ms: int


@dataclass(frozen=True)
class EyeLandmarks:
    """Six landmarks of one eye: the corners and the eyelid pairs.

    corner_outer/corner_inner carry the ratio-formula roles x_min/x_max;
    upper and lower are the two-point eyelid pairs whose y-means bound the
    vertical ratio.
    """

    side: str  # "left" | "right"
    corner_outer: tuple[float, float]
    corner_inner: tuple[float, float]
    upper: tuple[tuple[float, float], tuple[float, float]]
    lower: tuple[tuple[float, float], tuple[float, float]]

    @classmethod
    def from_face(cls, face: FaceLandmarks, side: str, swap_eyes: bool = False) -> "EyeLandmarks":
        use = side
        if swap_eyes:
            use = "right" if side == "left" else "left"
        idx = LEFT_EYE_INDICES if use == "left" else RIGHT_EYE_INDICES
        p = [tuple(float(c) for c in face.points[i]) for i in idx]
        return cls(side=side, corner_outer=p[0], corner_inner=p[3], upper=(p[1], p[2]), lower=(p[4], p[5]))


@dataclass(frozen=True)
class EyeRegion:
    side: str
    image: np.ndarray
    origin: tuple[int, int]  # (x, y) of the crop within the frame

    def to_frame_coords(self, x: float, y: float) -> tuple[float, float]:
        return x + self.origin[0], y + self.origin[1]


class LandmarkProvider(Protocol):
    def detect(self, frame: Frame) -> Optional[np.ndarray]:
        """68x2 point array for a frontal face, or None."""
        ...


class PlaybackProvider:
    """Replays a recorded landmark trace keyed by frame timestamp.

    Trace format: one JSON record per line, {"t_ms": int, "points": [[x, y] * 68]}.
    """

    def __init__(self, path: str | Path):
        self._by_t: dict[int, np.ndarray] = {}
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                pts = np.asarray(rec["points"], dtype=np.float64)
                if pts.shape != (68, 2):
                    raise ValueError(f"landmark record at t={rec['t_ms']} has shape {pts.shape}")
                self._by_t[int(rec["t_ms"])] = pts

    def detect(self, frame: Frame) -> Optional[np.ndarray]:
        pts = self._by_t.get(frame.t_ms)
        return None if pts is None else pts.copy()


class CallableProvider:
    """Adapter slot for an external landmark model runtime."""

    def __init__(self, fn: Callable[[Frame], Optional[np.ndarray]]):
        self._fn = fn

    def detect(self, frame: Frame) -> Optional[np.ndarray]:
        return self._fn(frame)


def detect_landmarks(frame: Frame, provider: LandmarkProvider) -> Optional[FaceLandmarks]:
    """Run the provider, validating shape and frame bounds.

    Provider failures are recoverable: the frame is skipped with a log entry.
    """
    try:
        points = provider.detect(frame)
    except Exception:
        log.warning("landmark provider failed at t=%d; frame skipped", frame.t_ms, exc_info=True)
        return None
    if points is None:
        return None
    points = np.asarray(points, dtype=np.float64)
    if points.shape != (68, 2):
        log.warning("provider returned %s points at t=%d; frame skipped", points.shape, frame.t_ms)
        return None
    xs, ys = points[:, 0], points[:, 1]
    if xs.min() < 0 or ys.min() < 0 or xs.max() >= frame.width or ys.max() >= frame.height:
        log.warning("landmarks outside frame bounds at t=%d; frame skipped", frame.t_ms)
        return None
    return FaceLandmarks(points=points, t_ms=frame.t_ms)


def _crop(frame: Frame, points: np.ndarray, margin: int, side: str) -> EyeRegion:
    x_min = int(math.floor(points[:, 0].min()))
    x_max = int(math.ceil(points[:, 0].max()))
    y_min = int(math.floor(points[:, 1].min()))
    y_max = int(math.ceil(points[:, 1].max()))
    width = x_max - x_min + 2 * margin
    height = y_max - y_min + 2 * margin
    if width <= 0 or height <= 0:
        raise InvalidLandmarksError(f"{side} eye bounding box has zero area")
    x0 = max(0, x_min - margin)
    y0 = max(0, y_min - margin)
    x1 = min(frame.width, x_min - margin + width)
    y1 = min(frame.height, y_min - margin + height)
    if x1 <= x0 or y1 <= y0:
        raise InvalidLandmarksError(f"{side} eye crop falls outside the frame")
    return EyeRegion(side=side, image=frame.image[y0:y1, x0:x1].copy(), origin=(x0, y0))


def extract_eye_regions(
    frame: Frame, landmarks: FaceLandmarks, margin: int = DEFAULT_CROP_MARGIN
) -> tuple[EyeRegion, EyeRegion]:
    """Bounding-box crops of both eyes, expanded by margin and clamped to the frame."""
    if margin < 0:
        raise ValueError("margin must be >= 0")
    left = _crop(frame, landmarks.points[list(LEFT_EYE_INDICES)], margin, "left")
    right = _crop(frame, landmarks.points[list(RIGHT_EYE_INDICES)], margin, "right")
    return left, right


class FrameDirSource:
    """Iterates PGM frames from a directory per its index file."""

    def __init__(self, directory: str | Path, index_name: str = "index.json"):
        self.directory = Path(directory)
        self.entries = read_frame_index(self.directory / index_name)

    def __iter__(self):
        for name, t_ms in self.entries:
            yield Frame(image=read_pgm(self.directory / name), t_ms=t_ms)


def open_camera_source(device: int = 0):  # pragma: no cover - requires hardware
    """Live webcam frames via OpenCV; grayscale conversion applied at ingest."""
    import time

    import cv2

    cap = cv2.VideoCapture(device)
    if not cap.isOpened():
        raise RuntimeError(f"cannot open camera {device}")

    def frames():
        t0 = time.monotonic()
        while True:
            ok, img = cap.read()
            if not ok:
                break
            gray = to_grayscale(img[..., ::-1])  # BGR -> RGB -> luma
            yield Frame(image=gray, t_ms=int((time.monotonic() - t0) * 1000))

    return frames()
