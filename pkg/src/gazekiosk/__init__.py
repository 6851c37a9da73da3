"""Gaze-driven kiosk: webcam pupil-ratio gaze estimation, dwell selection,
a two-stage hierarchical menu, a deterministic simulation lab, and a
realtime event service."""

from .calibration import CalibrationProfile, CalibrationTargetSpec, is_blink, run_calibration
from .dwell import DwellConfig, DwellEvent, DwellSelector, DwellState
from .menu import Catalog, MenuAction, MenuEngine
from .pipeline import Pipeline, PipelineConfig, run_trace
from .ratios import GazeSample, RatioBounds, combine_eyes, horizontal_ratio, renormalize, vertical_ratio
from .segmentation import (
    PupilCenter,
    SegmentationParams,
    bilateral_filter,
    binarize,
    calibrate_threshold,
    centroid_from_moments,
    erode,
    locate_pupil,
)
from .sim import Condition, Metrics, SyntheticUserModel, TrialRecord, compute_metrics, replay, run_grid, synth_trace
from .vision import EyeLandmarks, EyeRegion, FaceLandmarks, Frame, detect_landmarks, extract_eye_regions
from .zones import CentralArea, ScreenGeometry, Zone, classify, map_to_screen

__version__ = "0.1.0"

__all__ = [
    "CalibrationProfile",
    "CalibrationTargetSpec",
    "Catalog",
    "CentralArea",
    "Condition",
    "DwellConfig",
    "DwellEvent",
    "DwellSelector",
    "DwellState",
    "EyeLandmarks",
    "EyeRegion",
    "FaceLandmarks",
    "Frame",
    "GazeSample",
    "MenuAction",
    "MenuEngine",
    "Metrics",
    "Pipeline",
    "PipelineConfig",
    "PupilCenter",
    "RatioBounds",
    "ScreenGeometry",
    "SegmentationParams",
    "SyntheticUserModel",
    "TrialRecord",
    "Zone",
    "bilateral_filter",
    "binarize",
    "calibrate_threshold",
    "centroid_from_moments",
    "classify",
    "combine_eyes",
    "compute_metrics",
    "detect_landmarks",
    "erode",
    "extract_eye_regions",
    "horizontal_ratio",
    "is_blink",
    "locate_pupil",
    "map_to_screen",
    "renormalize",
    "replay",
    "run_calibration",
    "run_grid",
    "run_trace",
    "synth_trace",
    "vertical_ratio",
]
