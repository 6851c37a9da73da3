import numpy as np
import pytest

from gazekiosk.calibration import CalibrationProfile
from gazekiosk.ratios import GazeSample, RatioBounds
from gazekiosk.zones import CentralArea, ScreenGeometry, Zone, classify, classify_point, map_to_screen

from .oracles import classify_direct

PRESETS = ("small", "medium", "large", "pilot")


def profile(h_c=0.5, v_c=0.5):
    return CalibrationProfile(h_c=h_c, v_c=v_c, sample_count=30, created_at_ms=0, bounds=RatioBounds())


def sample(h, v, t=0):
    return GazeSample(t_ms=t, h_final=h, v_final=v, valid=True)


class TestClassify:
    def test_profile_center_is_center(self):
        assert classify(sample(0.5, 0.5), profile(), CentralArea.preset("medium")) is Zone.CENTER

    def test_leftward_excess(self):
        # |dh| = 0.20 > w/2 = 0.10, dv = 0: high ratio means looking left
        assert classify(sample(0.70, 0.50), profile(), CentralArea.preset("medium")) is Zone.LEFT

    def test_downward_excess(self):
        assert classify(sample(0.50, 0.70), profile(), CentralArea.preset("medium")) is Zone.DOWN

    def test_corner_goes_to_larger_normalized_excess(self):
        # e_h = (0.2-0.1)/0.1 = 1.0, e_v = (0.2-0.06)/0.06 = 2.33 -> Down
        assert classify(sample(0.70, 0.70), profile(), CentralArea.preset("medium")) is Zone.DOWN

    def test_invalid_sample_is_no_zone(self):
        s = GazeSample(t_ms=0, h_final=None, v_final=None, valid=False)
        assert classify(s, profile(), CentralArea.preset("medium")) is None

    def test_boundary_inclusive(self):
        area = CentralArea.preset("medium")
        assert classify(sample(0.60, 0.5), profile(), area) is Zone.CENTER  # dh exactly w/2
        assert classify(sample(0.60 + 1e-9, 0.5), profile(), area) is Zone.LEFT

    @pytest.mark.parametrize("preset", PRESETS)
    def test_grid_matches_brute_force(self, preset):
        area = CentralArea.preset(preset)
        for h_c, v_c in ((0.5, 0.5), (0.56, 0.51)):
            grid = np.linspace(0.0, 1.0, 41)
            for h in grid:
                for v in grid:
                    got = classify_point(float(h), float(v), h_c, v_c, area)
                    want = classify_direct(float(h), float(v), h_c, v_c, area.w, area.l)
                    assert got.value == want, (preset, h, v)

    def test_nesting_small_medium_large(self):
        small, medium, large = (CentralArea.preset(p) for p in ("small", "medium", "large"))
        grid = np.linspace(0.0, 1.0, 81)
        for h in grid:
            for v in grid:
                if classify_point(float(h), float(v), 0.5, 0.5, small) is Zone.CENTER:
                    assert classify_point(float(h), float(v), 0.5, 0.5, medium) is Zone.CENTER
                    assert classify_point(float(h), float(v), 0.5, 0.5, large) is Zone.CENTER

    def test_mirror_symmetry_swaps_left_right(self):
        rng = np.random.default_rng(3)
        area = CentralArea.preset("medium")
        h_c = 0.5
        swap = {Zone.LEFT: Zone.RIGHT, Zone.RIGHT: Zone.LEFT}
        for h, v in rng.random((200, 2)):
            a = classify_point(float(h), float(v), h_c, 0.5, area)
            b = classify_point(float(2 * h_c - h), float(v), h_c, 0.5, area)
            assert b is swap.get(a, a)

    def test_never_center_when_outside(self):
        rng = np.random.default_rng(4)
        area = CentralArea.preset("small")
        for h, v in rng.random((500, 2)):
            z = classify_point(float(h), float(v), 0.5, 0.5, area)
            outside = max(abs(h - 0.5) - area.w / 2, abs(v - 0.5) - area.l / 2) > 0
            if outside:
                assert z is not Zone.CENTER


class TestPresets:
    def test_preset_values(self):
        assert (CentralArea.preset("small").w, CentralArea.preset("small").l) == (0.16, 0.09)
        assert (CentralArea.preset("medium").w, CentralArea.preset("medium").l) == (0.20, 0.12)
        assert (CentralArea.preset("large").w, CentralArea.preset("large").l) == (0.24, 0.16)
        assert (CentralArea.preset("pilot").w, CentralArea.preset("pilot").l) == (0.40, 0.20)

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            CentralArea.preset("huge")


class TestMapToScreen:
    def test_profile_center_maps_to_screen_center(self):
        x, y = map_to_screen(sample(0.56, 0.51), profile(0.56, 0.51), ScreenGeometry())
        assert (x, y) == (960, 540)

    def test_leftmost_maps_to_zero(self):
        x, _ = map_to_screen(sample(1.0, 0.5), profile(), ScreenGeometry())
        assert x == 0

    def test_always_clamped(self):
        rng = np.random.default_rng(5)
        geom = ScreenGeometry()
        for h, v in rng.random((300, 2)):
            x, y = map_to_screen(sample(float(h), float(v)), profile(0.9, 0.1), geom)
            assert 0 <= x <= 1919
            assert 0 <= y <= 1079
