"""Frame-to-sample front end: landmarks, eye crops, pupil centers, ratios.

Yields (GazeSample, blink) pairs ready for the pipeline. The binarization
threshold is calibrated per eye on the first usable frame and frozen for the
session; kiosk lighting is stable and per-frame scanning is wasted work.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable, Iterator, Optional

import numpy as np

from .calibration import is_blink
from .errors import InvalidLandmarksError, NoContrastError
from .ratios import GazeSample, RatioBounds, build_sample
from .segmentation import SegmentationParams, calibrate_threshold, locate_pupil
from .vision import EyeLandmarks, EyeRegion, Frame, LandmarkProvider, detect_landmarks, extract_eye_regions


class VisionFrontend:
    def __init__(
        self,
        provider: LandmarkProvider,
        params: SegmentationParams,
        bounds: RatioBounds,
        margin: int = 5,
        swap_eyes: bool = False,
        mirror: bool = False,
    ):
        self.provider = provider
        self.bounds = bounds
        self.margin = margin
        self.swap_eyes = swap_eyes
        self.mirror = mirror
        self._params = {"left": params, "right": params}

    def _frozen_params(self, side: str, region: EyeRegion) -> SegmentationParams:
        params = self._params[side]
        if params.threshold is None:
            try:
                t = calibrate_threshold(region.image, params)
            except NoContrastError:
                return params  # keep adaptive; retried on the next frame
            params = replace(params, threshold=t)
            self._params[side] = params
        return params

    def _pupil(self, region: EyeRegion) -> Optional[tuple[float, float]]:
        params = self._frozen_params(region.side, region)
        try:
            center = locate_pupil(region.image, params)
        except NoContrastError:
            return None
        if center is None:
            return None
        return region.to_frame_coords(center.x, center.y)

    def process(self, frame: Frame) -> tuple[GazeSample, bool]:
        if self.mirror:
            frame = Frame(image=np.fliplr(frame.image).copy(), t_ms=frame.t_ms)
        invalid = GazeSample(t_ms=frame.t_ms, h_final=None, v_final=None, valid=False)
        face = detect_landmarks(frame, self.provider)
        if face is None:
            return invalid, False
        try:
            region_36, region_42 = extract_eye_regions(frame, face, self.margin)
        except InvalidLandmarksError:
            return invalid, False
        if self.swap_eyes:
            # role labels swap together with the index sets used for ratios
            left_region = replace(region_42, side="left")
            right_region = replace(region_36, side="right")
        else:
            left_region, right_region = region_36, region_42
        left_eye = EyeLandmarks.from_face(face, "left", self.swap_eyes)
        right_eye = EyeLandmarks.from_face(face, "right", self.swap_eyes)
        blink = is_blink(left_eye) or is_blink(right_eye)
        sample = build_sample(
            t_ms=frame.t_ms,
            left_pupil=self._pupil(left_region),
            right_pupil=self._pupil(right_region),
            left_eye=left_eye,
            right_eye=right_eye,
            bounds=self.bounds,
        )
        return sample, blink

    def run(self, frames: Iterable[Frame]) -> Iterator[tuple[GazeSample, bool]]:
        for frame in frames:
            yield self.process(frame)
