import math

import numpy as np
import pytest

from curveq import (
    TubeValidityError,
    divergence_identity,
    frenet_at,
    gamma_at,
    limit_suite,
    metric_at,
    momentum_field_split,
)


def fd_metric(curve, map_, s, q2, q3, h=1e-5):
    """Metric from finite-difference covariant basis vectors.

    x(s, q2, q3) = a(s) + q2*n(s) + q3*b(s); x_1 comes from a central
    difference in s, x_2 = n and x_3 = b exactly.
    """

    def x(ss):
        f = frenet_at(curve, map_, ss)
        return f.position + q2 * f.n_hat + q3 * f.b_hat

    def x1(step):
        return (x(s + step) - x(s - step)) / (2.0 * step)

    u1 = (4.0 * x1(h / 2) - x1(h)) / 3.0
    f = frenet_at(curve, map_, s)
    basis = [u1, f.n_hat, f.b_hat]
    return np.array([[bi @ bj for bj in basis] for bi in basis])


class TestMetric:
    def test_helix_point_values(self, helix_case):
        # kappa = 0.12, tau = 0.16 on the R=3, C=4 helix.
        s = 0.3 * helix_case.map.length
        sample = frenet_at(helix_case.curve, helix_case.map, s)
        m = metric_at(sample, 0.5, 0.25)
        # Closed forms: G11 = (1-kappa*q2)^2 + tau^2 (q2^2+q3^2),
        # G12 = -tau*q3, G13 = tau*q2, det = (1-kappa*q2)^2.
        assert m.g[0, 0] == pytest.approx(0.8916, rel=1e-12)
        assert m.g[0, 1] == pytest.approx(-0.04, rel=1e-12)
        assert m.g[0, 2] == pytest.approx(0.08, rel=1e-12)
        assert m.g[1, 1] == pytest.approx(1.0, abs=1e-15)
        assert m.g[2, 2] == pytest.approx(1.0, abs=1e-15)
        assert m.g[1, 2] == pytest.approx(0.0, abs=1e-15)
        assert m.det_g == pytest.approx(0.8836, rel=1e-12)

    def test_metric_matches_fd_basis(self, wavy_case):
        rng = np.random.default_rng(7)
        for _ in range(10):
            s = rng.uniform(0, wavy_case.map.length)
            sample = frenet_at(wavy_case.curve, wavy_case.map, s)
            margin = 0.5 / sample.kappa
            q2, q3 = rng.uniform(-margin, margin, 2)
            m = metric_at(sample, q2, q3)
            g_fd = fd_metric(wavy_case.curve, wavy_case.map, s, q2, q3)
            assert np.max(np.abs(m.g - g_fd)) < 1e-8

    def test_det_and_inverse_identities(self, all_cases):
        rng = np.random.default_rng(3)
        for case in all_cases:
            if case.name == "line":
                continue
            for _ in range(100):
                s = rng.uniform(0, case.map.length)
                sample = frenet_at(case.curve, case.map, s)
                margin = 0.9 / sample.kappa
                q2 = rng.uniform(-margin, margin)
                q3 = rng.uniform(-margin, margin)
                m = metric_at(sample, q2, q3)
                assert m.det_g == pytest.approx(
                    (1.0 - sample.kappa * q2) ** 2, abs=1e-12
                )
                assert np.max(np.abs(m.g @ m.g_inv - np.eye(3))) < 1e-12

    def test_invalid_point_rejected(self, circle_case):
        sample = frenet_at(circle_case.curve, circle_case.map, 1.0)
        with pytest.raises(TubeValidityError):
            metric_at(sample, 1.0 / sample.kappa, 0.0)


class TestGamma:
    def test_gamma_circle_closed_form(self, circle_case):
        # On the axis of a circle tube: gamma = kappa*n/2 exactly at q=0.
        s = 1.3
        sample = frenet_at(circle_case.curve, circle_case.map, s)
        gamma = gamma_at(circle_case.curve, circle_case.map, s, 0.0, 0.0).gamma
        assert gamma == pytest.approx(0.5 * sample.kappa * sample.n_hat, abs=1e-12)

    def test_divergence_identity_random_points(self, all_cases):
        rng = np.random.default_rng(11)
        for case in all_cases:
            if case.name == "line":
                continue
            for _ in range(20):
                s = rng.uniform(0, case.map.length)
                sample = frenet_at(case.curve, case.map, s)
                margin = 0.5 / sample.kappa
                q2 = rng.uniform(-margin, margin)
                q3 = rng.uniform(-margin, margin)
                res = divergence_identity(case.curve, case.map, s, q2, q3)
                assert res < 1e-6

    def test_momentum_split_recombines(self, helix_case):
        s = 2.0
        ms = momentum_field_split(helix_case.curve, helix_case.map, s, 0.3, -0.2)
        # Zeroth-order terms cancel in the sum; derivative slots are the
        # contravariant basis.
        _, _, _, zeroth = ms.sum_coefficients()
        assert np.max(np.abs(zeroth)) < 1e-14
        assert ms.zeroth_along_fd == pytest.approx(ms.zeroth_along, abs=1e-8)
        assert ms.zeroth_normal_fd == pytest.approx(ms.zeroth_normal, abs=1e-8)


class TestSqueezingLimits:
    def test_helix_limit_table(self, helix_case):
        s = 0.4 * helix_case.map.length
        kappa = frenet_at(helix_case.curve, helix_case.map, s).kappa
        report = limit_suite(helix_case.curve, helix_case.map, s)
        scale = max(kappa**2, 1e-3)
        for e in report.entries:
            tol = 1e-4 * max(abs(e.target), scale)
            assert abs(e.extrapolated - e.target) < tol, e.name
        assert report.entry("gamma_dot_gamma").target == pytest.approx(
            0.0036, rel=1e-12
        )
        assert report.entry("ua_dot_da_gamma").target == pytest.approx(
            0.0072, rel=1e-12
        )

    def test_wavy_limit_table(self, wavy_case):
        s = 0.25 * wavy_case.map.length
        kappa = frenet_at(wavy_case.curve, wavy_case.map, s).kappa
        report = limit_suite(wavy_case.curve, wavy_case.map, s)
        scale = max(kappa**2, 1e-3)
        for e in report.entries:
            tol = 1e-4 * max(abs(e.target), scale)
            assert abs(e.extrapolated - e.target) < tol, e.name
