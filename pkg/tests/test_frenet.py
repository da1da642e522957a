import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curveq import (
    CurvatureError,
    CurveDefinition,
    arclength_map,
    frenet_at,
    is_straight,
)
from curveq.errors import RegularityError
from curveq.verify import frame_orthonormality_deviation, frenet_serret_residual


def make(ax, ay, az, t_min, t_max, closed=False):
    curve = CurveDefinition.from_strings(ax, ay, az, t_min, t_max, closed)
    return curve, arclength_map(curve)


class TestArcLength:
    def test_circle_length(self):
        _, map_ = make("2*cos(t)", "2*sin(t)", "0*t", 0, 2 * math.pi, True)
        assert map_.length == pytest.approx(4 * math.pi, rel=1e-13)

    def test_helix_length(self):
        _, map_ = make("3*cos(t)", "3*sin(t)", "4*t", 0, 2 * math.pi)
        assert map_.length == pytest.approx(10 * math.pi, rel=1e-13)

    def test_round_trip(self):
        curve, map_ = make("3*cos(t)", "3*sin(t)", "1.5*t + 0.2*sin(2*t)",
                           0, 2 * math.pi)
        for t in np.linspace(0.0, 2 * math.pi, 17):
            assert map_.t_of_s(map_.s_of_t(t)) == pytest.approx(t, abs=1e-11)

    def test_nonuniform_speed(self):
        # a(t) = (t^2, 0, 0) on [1, 2]: arc length is t^2 - 1.
        _, map_ = make("t^2", "0*t", "0*t", 1.0, 2.0)
        assert map_.length == pytest.approx(3.0, rel=1e-13)
        assert map_.s_of_t(1.5) == pytest.approx(1.25, rel=1e-12)


class TestFrames:
    def test_circle(self):
        curve, map_ = make("2*cos(t)", "2*sin(t)", "0*t", 0, 2 * math.pi, True)
        f = frenet_at(curve, map_, map_.length / 8.0)
        assert f.kappa == pytest.approx(0.5, rel=1e-12)
        assert f.tau == pytest.approx(0.0, abs=1e-12)
        theta = math.pi / 4.0
        assert f.t_hat == pytest.approx(
            [-math.sin(theta), math.cos(theta), 0.0], abs=1e-12
        )
        # Normal points to the center.
        assert f.n_hat == pytest.approx(
            [-math.cos(theta), -math.sin(theta), 0.0], abs=1e-12
        )
        assert f.b_hat == pytest.approx([0.0, 0.0, 1.0], abs=1e-12)

    def test_helix(self):
        curve, map_ = make("3*cos(t)", "3*sin(t)", "4*t", 0, 2 * math.pi)
        f = frenet_at(curve, map_, 2.0)
        assert f.kappa == pytest.approx(3.0 / 25.0, rel=1e-12)
        assert f.tau == pytest.approx(4.0 / 25.0, rel=1e-12)
        theta = 2.0 / 5.0
        assert f.n_hat == pytest.approx(
            [-math.cos(theta), -math.sin(theta), 0.0], abs=1e-12
        )
        assert f.kappa_s == pytest.approx(0.0, abs=1e-14)
        assert f.tau_s == pytest.approx(0.0, abs=1e-14)

    def test_derivatives_match_finite_differences(self):
        curve, map_ = make("3*cos(t)", "3*sin(t)", "1.5*t + 0.2*sin(2*t)",
                           0, 2 * math.pi)
        s0 = 0.37 * map_.length
        h = 1e-3

        def kappa(s):
            return frenet_at(curve, map_, s).kappa

        def tau(s):
            return frenet_at(curve, map_, s).tau

        def rich_d1(g):
            d = lambda step: (g(s0 + step) - g(s0 - step)) / (2 * step)
            return (4 * d(h / 2) - d(h)) / 3.0

        def rich_d2(g):
            d = lambda step: (g(s0 + step) - 2 * g(s0) + g(s0 - step)) / step**2
            return (4 * d(h / 2) - d(h)) / 3.0

        f = frenet_at(curve, map_, s0)
        assert f.kappa_s == pytest.approx(rich_d1(kappa), rel=1e-7, abs=1e-9)
        assert f.tau_s == pytest.approx(rich_d1(tau), rel=1e-7, abs=1e-9)
        assert f.kappa_ss == pytest.approx(rich_d2(kappa), rel=1e-5, abs=1e-7)

    def test_frenet_serret_relations_converge(self, wavy_case):
        levels = [64, 128, 256]
        res = [
            frenet_serret_residual(wavy_case.curve, wavy_case.map, n)
            for n in levels
        ]
        ratios = [res[i] / res[i + 1] for i in range(len(res) - 1)]
        for r in ratios:
            assert 3.4 < r < 4.6  # order 2 under halving

    def test_orthonormality(self, all_cases):
        for case in all_cases:
            if case.name == "line":
                continue
            dev = frame_orthonormality_deviation(case.curve, case.map)
            assert dev < 1e-12


class TestDegenerate:
    def test_straight_line(self):
        curve, map_ = make("2*t", "t", "t", 0.0, 1.0)
        assert is_straight(curve, map_)
        with pytest.raises(CurvatureError):
            frenet_at(curve, map_, 0.5 * map_.length)

    def test_irregular_curve_rejected(self):
        # Speed vanishes at t = 0.
        with pytest.raises(RegularityError):
            curve = CurveDefinition.from_strings(
                "t^2", "t^3", "0*t", 0.0, 1.0, False
            )
            curve.validate()

    def test_open_curve_marked_closed_rejected(self):
        with pytest.raises(Exception):
            curve = CurveDefinition.from_strings(
                "t", "0*t", "0*t", 0.0, 1.0, True
            )
            curve.validate()


@given(st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=25, deadline=None)
def test_arclength_inverse_property(u):
    curve = CurveDefinition.from_strings(
        "cos(t)", "sin(t)", "0.3*t", 0.0, 2 * math.pi, False
    )
    map_ = arclength_map(curve)
    s = u * map_.length
    assert map_.s_of_t(map_.t_of_s(s)) == pytest.approx(s, abs=1e-10)
