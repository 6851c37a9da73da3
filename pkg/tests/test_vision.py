import json

import numpy as np
import pytest

from gazekiosk.errors import InvalidLandmarksError
from gazekiosk.pgm import read_pgm, write_pgm
from gazekiosk.vision import (
    CallableProvider,
    EyeLandmarks,
    FaceLandmarks,
    Frame,
    PlaybackProvider,
    detect_landmarks,
    extract_eye_regions,
    to_grayscale,
)

from .conftest import synthetic_face_frame


def black_frame(t_ms=0, w=64, h=48):
    return Frame(image=np.zeros((h, w), dtype=np.uint8), t_ms=t_ms)


class TestProviders:
    def test_playback_missing_record_absent(self, tmp_path):
        trace = tmp_path / "landmarks.jsonl"
        trace.write_text("")
        provider = PlaybackProvider(trace)
        assert detect_landmarks(black_frame(), provider) is None

    def test_playback_passes_points_through(self, tmp_path):
        frame, face, _ = synthetic_face_frame(t_ms=33)
        trace = tmp_path / "landmarks.jsonl"
        rec = {"t_ms": 33, "points": face.points.tolist()}
        trace.write_text(json.dumps(rec) + "\n")
        got = detect_landmarks(frame, PlaybackProvider(trace))
        assert got is not None
        assert np.array_equal(got.points, face.points)

    def test_playback_is_deterministic(self, tmp_path):
        frame, face, _ = synthetic_face_frame(t_ms=0)
        trace = tmp_path / "landmarks.jsonl"
        trace.write_text(json.dumps({"t_ms": 0, "points": face.points.tolist()}) + "\n")
        a = detect_landmarks(frame, PlaybackProvider(trace))
        b = detect_landmarks(frame, PlaybackProvider(trace))
        assert np.array_equal(a.points, b.points)

    def test_live_adapter_on_synthetic_face(self):
        """A blob-finding detector routed through the adapter slot localizes
        the drawn eyes: indices 36-47 land inside the eye boxes."""
        frame, face, truth = synthetic_face_frame()

        def blob_detector(fr: Frame):
            dark = fr.image < 100
            ys, xs = np.nonzero(dark)
            if len(xs) == 0:
                return None
            split = (xs.min() + xs.max()) / 2.0
            centers = []
            for half in (xs < split, xs >= split):
                if not half.any():
                    return None
                centers.append((xs[half].mean(), ys[half].mean()))
            pts = face.points.copy()  # non-eye points: any valid layout
            for base, (cx, cy) in zip((36, 42), centers):
                pts[base] = (cx - 16, cy)
                pts[base + 1] = (cx - 6, cy - 6)
                pts[base + 2] = (cx + 6, cy - 6)
                pts[base + 3] = (cx + 16, cy)
                pts[base + 4] = (cx + 6, cy + 6)
                pts[base + 5] = (cx - 6, cy + 6)
            return pts

        got = detect_landmarks(frame, CallableProvider(blob_detector))
        assert got is not None
        for base, key in ((36, "left_center"), (42, "right_center")):
            cx, cy = truth[key]
            box = got.points[base : base + 6]
            assert (box[:, 0] >= cx - 16).all() and (box[:, 0] <= cx + 16).all()
            assert (box[:, 1] >= cy - 6).all() and (box[:, 1] <= cy + 6).all()

    def test_provider_failure_skips_frame(self):
        def broken(frame):
            raise RuntimeError("model crashed")

        assert detect_landmarks(black_frame(), CallableProvider(broken)) is None

    def test_out_of_bounds_points_rejected(self):
        pts = np.full((68, 2), 10.0)
        pts[0] = (-1, 5)
        assert detect_landmarks(black_frame(), CallableProvider(lambda f: pts)) is None


class TestExtractEyeRegions:
    def make_face(self, left_box, right_box, frame_size=(200, 160)):
        """Boxes as (x0, y0, x1, y1); six points spread over each box."""
        pts = np.full((68, 2), 80.0)
        for base, (x0, y0, x1, y1) in ((36, left_box), (42, right_box)):
            xm, ym = (x0 + x1) / 2, (y0 + y1) / 2
            pts[base] = (x0, ym)
            pts[base + 1] = (xm - 2, y0)
            pts[base + 2] = (xm + 2, y0)
            pts[base + 3] = (x1, ym)
            pts[base + 4] = (xm + 2, y1)
            pts[base + 5] = (xm - 2, y1)
        w, h = frame_size
        frame = Frame(image=np.zeros((h, w), dtype=np.uint8), t_ms=0)
        return frame, FaceLandmarks(points=pts, t_ms=0)

    def test_margin_expands_box(self):
        frame, face = self.make_face((100, 50, 140, 62), (10, 50, 50, 62))
        left, _ = extract_eye_regions(frame, face, margin=5)
        assert left.origin == (95, 45)
        assert left.image.shape == (22, 50)

    def test_zero_margin_exact_box(self):
        frame, face = self.make_face((100, 50, 140, 62), (10, 50, 50, 62))
        left, _ = extract_eye_regions(frame, face, margin=0)
        assert left.origin == (100, 50)
        assert left.image.shape == (12, 40)

    def test_clamped_at_frame_edge(self):
        frame, face = self.make_face((4, 50, 44, 62), (100, 50, 140, 62))
        left, _ = extract_eye_regions(frame, face, margin=10)
        assert left.origin == (0, 40)
        assert left.image.shape == (32, 54)  # 6 columns lost to the left edge

    def test_round_trip_to_frame_coords(self):
        frame, face = self.make_face((100, 50, 140, 62), (10, 40, 50, 52))
        left, right = extract_eye_regions(frame, face, margin=5)
        assert left.to_frame_coords(3.5, 2.0) == (98.5, 47.0)
        assert right.to_frame_coords(0.0, 0.0) == (5.0, 35.0)

    def test_degenerate_box_raises(self):
        pts = np.full((68, 2), 30.0)
        frame = Frame(image=np.zeros((60, 80), dtype=np.uint8), t_ms=0)
        with pytest.raises(InvalidLandmarksError):
            extract_eye_regions(frame, FaceLandmarks(points=pts, t_ms=0), margin=0)

    def test_crop_never_reads_outside_frame(self):
        frame, face = self.make_face((2, 2, 40, 14), (150, 140, 195, 155))
        for margin in (0, 3, 10, 50):
            left, right = extract_eye_regions(frame, face, margin=margin)
            for region in (left, right):
                x0, y0 = region.origin
                h, w = region.image.shape
                assert x0 >= 0 and y0 >= 0
                assert x0 + w <= frame.width and y0 + h <= frame.height


class TestEyeLandmarks:
    def test_index_roles(self):
        _, face, _ = synthetic_face_frame()
        left = EyeLandmarks.from_face(face, "left")
        right = EyeLandmarks.from_face(face, "right")
        assert left.corner_outer == tuple(face.points[36])
        assert left.corner_inner == tuple(face.points[39])
        assert right.corner_outer == tuple(face.points[42])
        assert right.upper == (tuple(face.points[43]), tuple(face.points[44]))

    def test_swap_eyes_flag(self):
        _, face, _ = synthetic_face_frame()
        swapped = EyeLandmarks.from_face(face, "left", swap_eyes=True)
        assert swapped.corner_outer == tuple(face.points[42])
        assert swapped.side == "left"


class TestGrayscaleAndPgm:
    def test_luma_weights(self):
        rgb = np.zeros((1, 3, 3), dtype=np.uint8)
        rgb[0, 0] = (255, 0, 0)
        rgb[0, 1] = (0, 255, 0)
        rgb[0, 2] = (0, 0, 255)
        gray = to_grayscale(rgb)
        assert list(gray[0]) == [76, 150, 29]

    def test_pgm_round_trip(self, tmp_path):
        rng = np.random.default_rng(2)
        img = rng.integers(0, 256, size=(11, 17), dtype=np.uint8)
        path = tmp_path / "frame.pgm"
        write_pgm(path, img)
        assert np.array_equal(read_pgm(path), img)

    def test_pgm_with_comment(self, tmp_path):
        path = tmp_path / "c.pgm"
        body = bytes(range(6))
        path.write_bytes(b"P5\n# a comment\n3 2\n255\n" + body)
        img = read_pgm(path)
        assert img.shape == (2, 3)
        assert img[1, 2] == 5
