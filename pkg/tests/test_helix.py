import math

import numpy as np
import pytest

from curveq import (
    HelixParams,
    PhysicalConstants,
    arclength_map,
    build_force_constant_curvature,
    build_geometric_momentum,
    frame_table,
    frenet_at,
    helix_curve,
    helix_hamiltonian_coefficients,
    helix_hamiltonian_matrix,
    helix_momentum_and_force_analytic,
    helix_spectrum_analytic,
    make_grid,
    solve_spectrum,
)
from curveq.helix import helix_force_matrices, helix_momentum_matrices

P34 = HelixParams(3.0, 4.0)


class TestClosedForms:
    def test_invariants(self):
        assert P34.kappa == pytest.approx(0.12, rel=1e-15)
        assert P34.tau == pytest.approx(0.16, rel=1e-15)
        assert P34.sin2_alpha == pytest.approx(0.36, rel=1e-15)
        assert P34.cos2_alpha == pytest.approx(0.64, rel=1e-15)
        assert P34.arc_per_radian() == pytest.approx(5.0, rel=1e-15)

    def test_flat_circle_limit(self):
        flat = HelixParams(2.0, 0.0)
        assert flat.kappa == pytest.approx(0.5, rel=1e-15)
        assert flat.tau == 0.0
        assert flat.sin2_alpha == 1.0

    def test_pipeline_agrees_with_closed_forms(self):
        curve = helix_curve(P34, turns=1.0)
        map_ = arclength_map(curve)
        assert map_.length == pytest.approx(10 * math.pi, rel=1e-12)
        f = frenet_at(curve, map_, 0.5 * map_.length)
        assert f.kappa == pytest.approx(P34.kappa, rel=1e-12)
        assert f.tau == pytest.approx(P34.tau, rel=1e-12)

    def test_hamiltonian_coefficients(self):
        pref, pot = helix_hamiltonian_coefficients(P34)
        assert pref == pytest.approx(-1.0 / 50.0, rel=1e-15)
        assert pot == pytest.approx(0.09, rel=1e-15)


class TestSpectrum:
    def test_analytic_energies(self):
        # E_m = (m^2 - sin^2(alpha)/4) / (2 (R^2 + C^2)).
        assert helix_spectrum_analytic(P34, PhysicalConstants(), 0) == pytest.approx(
            -0.0018, rel=1e-15
        )
        assert helix_spectrum_analytic(P34, PhysicalConstants(), 1) == pytest.approx(
            0.0182, rel=1e-15
        )

    def test_matrix_matches_analytic_periodic(self):
        ham = helix_hamiltonian_matrix(P34, PhysicalConstants(), 1024)
        spec = solve_spectrum(ham, 5)
        assert spec.eigenvalues[0] == pytest.approx(-0.0018, abs=1e-12)
        for i, mode in ((1, 1), (2, 1), (3, 2), (4, 2)):
            exact = helix_spectrum_analytic(P34, PhysicalConstants(), mode)
            assert spec.eigenvalues[i] == pytest.approx(exact, rel=2e-4)

    def test_matrix_matches_analytic_dirichlet(self):
        ham = helix_hamiltonian_matrix(P34, PhysicalConstants(), 1024, bc="dirichlet")
        spec = solve_spectrum(ham, 3)
        for i in range(3):
            exact = helix_spectrum_analytic(
                P34, PhysicalConstants(), i + 1, bc="dirichlet"
            )
            assert spec.eigenvalues[i] == pytest.approx(exact, rel=2e-4)

    def test_second_order_convergence(self):
        errs = []
        for n in (256, 512, 1024):
            ham = helix_hamiltonian_matrix(P34, PhysicalConstants(), n)
            spec = solve_spectrum(ham, 3)
            errs.append(
                abs(
                    spec.eigenvalues[1]
                    - helix_spectrum_analytic(P34, PhysicalConstants(), 1)
                )
            )
        for i in range(len(errs) - 1):
            assert 3.4 < errs[i] / errs[i + 1] < 4.6


class TestOperatorBundle:
    def test_momentum_and_force_values(self):
        b = helix_momentum_and_force_analytic(P34)
        assert b.momentum_dtheta_azimuthal == pytest.approx(0.12, rel=1e-15)
        assert b.momentum_dtheta_z == pytest.approx(0.16, rel=1e-15)
        assert b.momentum_zeroth_inward_radial == pytest.approx(0.06, rel=1e-15)
        assert b.force_classical_coefficient == pytest.approx(0.12, rel=1e-15)
        # (hbar^2 kappa / 4m)(2 kappa^2 + tau^2) with hbar = m = 1.
        assert b.force_quantum_magnitude == pytest.approx(
            0.12 / 4.0 * (2 * 0.12**2 + 0.16**2), rel=1e-15
        )

    def test_matrices_match_pipeline(self):
        curve = helix_curve(P34, turns=1.0)
        map_ = arclength_map(curve)
        grid = make_grid(map_.length, 200, "dirichlet", False)
        frame = frame_table(curve, map_, grid)

        f_pipe = build_force_constant_curvature(frame)
        f_ref = helix_force_matrices(P34, grid)
        scale = max(np.max(np.abs(a.entries)) for a in f_ref)
        for a, b in zip(f_pipe, f_ref):
            assert np.max(np.abs(a.entries - b.entries)) / scale < 1e-12

        p_pipe = build_geometric_momentum(frame)
        p_ref = helix_momentum_matrices(P34, grid)
        scale = max(np.max(np.abs(a.entries)) for a in p_ref)
        for a, b in zip(p_pipe, p_ref):
            assert np.max(np.abs(a.entries - b.entries)) / scale < 1e-12
